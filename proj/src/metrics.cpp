#include "krf/metrics.hpp"

#include "krf/error.hpp"
#include "krf/kernels.hpp"
#include "krf/spatial_index.hpp"

#include <algorithm>
#include <cmath>

namespace krf {

namespace {

double mean(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

// Mean nearest distance from each `from` point into `to`, via a kd-tree.
double mean_nearest(std::span<const Vec3> from, std::vector<Vec3> to) {
    const SpatialIndex index(std::move(to));
    const auto nn = kernels::omp::nearest_all(index, from);
    std::vector<double> d(nn.size());
    for (std::size_t i = 0; i < nn.size(); ++i) d[i] = nn[i].distance;
    return mean(d);
}

}  // namespace

ObjectModel::ObjectModel(ColoredPointCloud cloud, bool symmetric, std::optional<double> diameter)
    : cloud_(std::move(cloud)), symmetric_(symmetric) {
    if (cloud_.empty()) throw InvalidInput("ObjectModel: empty cloud");
    cloud_.frame = Frame::object;
    diameter_ = diameter ? *diameter : kernels::omp::max_pairwise_distance(cloud_.positions());
    if (!(diameter_ > 0.0)) throw InvalidInput("ObjectModel: diameter must be positive");
}

double add_metric(const ObjectModel& model, const PoseSE3& pred, const PoseSE3& gt) {
    const auto pts = model.cloud().positions();
    const auto a = kernels::omp::transform(pred, pts);
    const auto b = kernels::omp::transform(gt, pts);
    return kernels::omp::mean_paired_distance(a, b);
}

double add_s_metric(const ObjectModel& model, const PoseSE3& pred, const PoseSE3& gt) {
    const auto pts = model.cloud().positions();
    const auto a = kernels::omp::transform(pred, pts);
    return mean_nearest(a, kernels::omp::transform(gt, pts));
}

double add_or_adds(const ObjectModel& model, const PoseSE3& pred, const PoseSE3& gt) {
    return model.symmetric() ? add_s_metric(model, pred, gt) : add_metric(model, pred, gt);
}

double add_auc(std::span<const double> distances, double max_threshold) {
    if (distances.empty()) throw InvalidInput("add_auc: empty distance list");
    if (!(max_threshold > 0.0)) throw InvalidInput("add_auc: max_threshold must be positive");
    std::vector<double> area(distances.size());
    for (std::size_t i = 0; i < distances.size(); ++i) {
        const double d = distances[i];
        if (!(d >= 0.0)) throw InvalidInput("add_auc: distances must be non-negative");
        area[i] = d >= max_threshold ? 0.0 : 1.0 - d / max_threshold;
    }
    return mean(area);
}

double accuracy_at_diameter(std::span<const double> distances, double diameter, double fraction) {
    if (distances.empty()) throw InvalidInput("accuracy_at_diameter: empty distance list");
    if (!(diameter > 0.0)) throw InvalidInput("accuracy_at_diameter: diameter must be positive");
    const double threshold = fraction * diameter;
    const auto hits = std::count_if(distances.begin(), distances.end(), [&](double d) { return d < threshold; });
    return static_cast<double>(hits) / static_cast<double>(distances.size());
}

double accuracy_at_diameter(std::span<const double> distances, const ObjectModel& model, double fraction) {
    return accuracy_at_diameter(distances, model.diameter(), fraction);
}

double chamfer_loss(const ColoredPointCloud& partial, const ColoredPointCloud& dense) {
    if (partial.empty() || dense.empty()) throw InvalidInput("chamfer_loss: empty cloud");
    const auto p = partial.positions();
    const auto d = dense.positions();
    return mean_nearest(p, d) + mean_nearest(d, p);
}

double offset_loss(const OffsetField& predicted, const OffsetField& ground_truth) {
    if (predicted.points != ground_truth.points || predicted.keypoints != ground_truth.keypoints) {
        throw InvalidInput("offset_loss: shape mismatch");
    }
    if (predicted.points == 0 || predicted.keypoints == 0) throw InvalidInput("offset_loss: empty field");
    const std::size_t n = predicted.points * predicted.keypoints;
    if (predicted.offsets.size() != n || ground_truth.offsets.size() != n) {
        throw InvalidInput("offset_loss: offsets do not match declared shape");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += std::sqrt(squared_distance(predicted.offsets[i], ground_truth.offsets[i]));
    return sum / static_cast<double>(predicted.points);
}

void LossWeights::validate() const {
    if (alpha < 0.0 || beta < 0.0 || gamma < 0.0) throw InvalidInput("loss weights must be non-negative");
    if (alpha == 0.0 && beta == 0.0 && gamma == 0.0) throw InvalidInput("loss weights must not all be zero");
}

double combined_loss(double l_kp, double l_c, double l_cd, const LossWeights& w) {
    w.validate();
    return w.alpha * l_kp + w.beta * l_c + w.gamma * l_cd;
}

}  // namespace krf
