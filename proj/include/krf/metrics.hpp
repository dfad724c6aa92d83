#pragma once

#include "krf/geometry.hpp"

#include <optional>
#include <span>
#include <vector>

namespace krf {

/// Object point set used for evaluation.
class ObjectModel {
public:
    /// Diameter defaults to the exact max pairwise distance of the cloud.
    ObjectModel(ColoredPointCloud cloud, bool symmetric, std::optional<double> diameter = std::nullopt);

    [[nodiscard]] const ColoredPointCloud& cloud() const noexcept { return cloud_; }
    [[nodiscard]] bool symmetric() const noexcept { return symmetric_; }
    [[nodiscard]] double diameter() const noexcept { return diameter_; }
    [[nodiscard]] std::size_t size() const noexcept { return cloud_.size(); }

private:
    ColoredPointCloud cloud_;
    bool symmetric_;
    double diameter_;
};

/// Mean distance between the model transformed by `pred` and by `gt`, point by point.
double add_metric(const ObjectModel& model, const PoseSE3& pred, const PoseSE3& gt);

/// Like ADD but each predicted point is compared with its closest ground-truth point.
double add_s_metric(const ObjectModel& model, const PoseSE3& pred, const PoseSE3& gt);

/// ADD-S for symmetric models, ADD otherwise.
double add_or_adds(const ObjectModel& model, const PoseSE3& pred, const PoseSE3& gt);

/// Area under accuracy(t) = fraction{d < t} for t in [0, max_threshold],
/// normalized by max_threshold. Computed exactly as mean(max(0, 1 - d/cap)).
double add_auc(std::span<const double> distances, double max_threshold = 0.1);

/// Fraction of distances strictly below fraction × diameter.
double accuracy_at_diameter(std::span<const double> distances, double diameter, double fraction = 0.1);
double accuracy_at_diameter(std::span<const double> distances, const ObjectModel& model, double fraction = 0.1);

/// Symmetric Chamfer distance with unsquared nearest-neighbor distances.
double chamfer_loss(const ColoredPointCloud& partial, const ColoredPointCloud& dense);

/// N×K per-point keypoint offsets, row-major (point, keypoint).
struct OffsetField {
    std::size_t points = 0;
    std::size_t keypoints = 0;
    std::vector<Vec3> offsets;
};

/// (1/N) Σ_i Σ_j |pred_ij - gt_ij|.
double offset_loss(const OffsetField& predicted, const OffsetField& ground_truth);

struct LossWeights {
    double alpha = 1.0;
    double beta = 1.0;
    double gamma = 10.0;

    void validate() const;
};

double combined_loss(double l_kp, double l_c, double l_cd, const LossWeights& w);

}  // namespace krf
