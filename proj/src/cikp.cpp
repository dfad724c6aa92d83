#include "krf/cikp.hpp"

#include "krf/error.hpp"
#include "krf/rng.hpp"
#include "krf/spatial_index.hpp"

#include <cmath>

namespace krf {

void CikpConfig::validate() const {
    if (!(radius_factor > 0.0)) throw InvalidInput("radius_factor must be positive");
    if (m1 < 1) throw InvalidInput("m1 must be at least 1");
    if (m2 < m1) throw InvalidInput("m2 must be at least m1");
    if (!(tau > 0.0)) throw InvalidInput("tau must be positive");
    if (max_iterations < 1) throw InvalidInput("max_iterations must be at least 1");
    if (k_candidates < 1) throw InvalidInput("k_candidates must be at least 1");
    ColorDistanceParams{epsilon}.validate();
}

std::string to_string(StopReason reason) {
    switch (reason) {
        case StopReason::converged: return "converged";
        case StopReason::max_iterations: return "max-iterations";
        case StopReason::insufficient_correspondences: return "insufficient-correspondences";
        case StopReason::degenerate_fit: return "degenerate-fit";
    }
    return "unknown";
}

namespace {

struct Correspondences {
    std::vector<Vec3> matched;  // transformed-model points, camera frame
    std::vector<std::size_t> matched_index;
    std::vector<Vec3> targets;
    double distance_sum = 0.0;
};

Correspondences correspond(std::span<const std::size_t> target_ids, const ColoredPointCloud& target,
                           const SpatialIndex& source_index, const ColoredPointCloud& source_cam,
                           const CikpConfig& config) {
    const ColorDistanceParams params{config.epsilon};
    Correspondences c;
    c.matched.reserve(target_ids.size());
    c.matched_index.reserve(target_ids.size());
    c.targets.reserve(target_ids.size());
    for (std::size_t id : target_ids) {
        ColoredPoint pt = target[id];
        if (!config.use_color) pt.color.reset();
        const Match m = match_point(pt, source_index, source_cam, params, config.k_candidates);
        c.matched.push_back(source_cam[m.index].position);
        c.matched_index.push_back(m.index);
        c.targets.push_back(pt.position);
        c.distance_sum += m.distance;
    }
    return c;
}

std::vector<std::size_t> subsample(std::vector<std::size_t> ids, std::size_t cap, Rng& rng) {
    if (ids.size() <= cap) return ids;
    std::vector<std::size_t> out;
    out.reserve(cap);
    for (std::size_t i : rng.sample_without_replacement(ids.size(), cap)) out.push_back(ids[i]);
    return out;
}

}  // namespace

RefineReport refine(const ColoredPointCloud& source_model, const ColoredPointCloud& target,
                    const KeypointSet& keypoints, const PoseSE3& init_pose, const CikpConfig& config) {
    config.validate();
    if (source_model.empty()) throw InvalidInput("refine: empty source model");
    if (target.empty()) throw InvalidInput("refine: empty target");
    if (keypoints.size() < 3) throw InvalidInput("refine: need at least 3 keypoints");

    const double radius = config.radius_factor * model_radius(source_model);
    if (!(radius > 0.0)) throw InvalidInput("refine: model radius is zero");

    const SpatialIndex target_index(target);
    Rng rng(config.rng_seed);

    RefineReport report;
    report.final_pose = init_pose;
    PoseSE3 pose = init_pose;

    const std::size_t n_kp = keypoints.size();
    std::vector<std::size_t> all_targets;
    if (config.mode == RegistrationMode::global) {
        all_targets.resize(target.size());
        for (std::size_t i = 0; i < target.size(); ++i) all_targets[i] = i;
    }

    for (std::size_t iter = 0; iter < config.max_iterations; ++iter) {
        const ColoredPointCloud source_cam = apply_pose(pose, source_model);
        const SpatialIndex source_index(source_cam);

        IterationRecord record;
        record.correspondence_counts.assign(n_kp, 0);
        record.skipped.assign(n_kp, false);
        double distance_sum = 0.0;
        std::size_t pair_count = 0;
        PoseSE3 next = pose;

        try {
            if (config.mode == RegistrationMode::per_keypoint) {
                std::vector<Vec3> refined(n_kp);
                std::size_t active = 0;
                for (std::size_t i = 0; i < n_kp; ++i) {
                    refined[i] = pose.apply(keypoints[i]);
                    std::vector<std::size_t> near = target_index.radius_search(refined[i], radius);
                    if (near.size() < config.m1) {
                        record.skipped[i] = true;
                        continue;
                    }
                    near = subsample(std::move(near), config.m2, rng);
                    const Correspondences c = correspond(near, target, source_index, source_cam, config);
                    refined[i] += fit_translation(c.matched, c.targets);
                    record.correspondence_counts[i] = c.targets.size();
                    distance_sum += c.distance_sum;
                    pair_count += c.targets.size();
                    ++active;
                }
                if (active == 0) {
                    report.iterations.push_back(std::move(record));
                    report.iterations_run = iter + 1;
                    report.reason = StopReason::insufficient_correspondences;
                    return report;
                }
                next = fit_rigid(keypoints, refined);
            } else {
                const auto ids = subsample(all_targets, config.m2 * n_kp, rng);
                const Correspondences c = correspond(ids, target, source_index, source_cam, config);
                if (c.targets.size() < std::max<std::size_t>(3, config.m1)) {
                    record.correspondence_counts = {c.targets.size()};
                    record.skipped = {true};
                    report.iterations.push_back(std::move(record));
                    report.iterations_run = iter + 1;
                    report.reason = StopReason::insufficient_correspondences;
                    return report;
                }
                std::vector<Vec3> model_points;
                model_points.reserve(c.matched_index.size());
                for (std::size_t idx : c.matched_index) model_points.push_back(source_model[idx].position);
                next = fit_rigid(model_points, c.targets);
                // One global neighborhood.
                record.correspondence_counts = {c.targets.size()};
                record.skipped = {false};
                distance_sum = c.distance_sum;
                pair_count = c.targets.size();
            }
        } catch (const DegenerateConfiguration&) {
            record.mean_distance = pair_count > 0 ? distance_sum / static_cast<double>(pair_count) : 0.0;
            report.iterations.push_back(std::move(record));
            report.iterations_run = iter + 1;
            report.reason = StopReason::degenerate_fit;
            return report;
        }

        pose = next;
        report.final_pose = pose;
        record.mean_distance = distance_sum / static_cast<double>(pair_count);
        const bool done = record.mean_distance < config.tau;
        report.iterations.push_back(std::move(record));
        report.iterations_run = iter + 1;
        if (done) {
            report.converged = true;
            report.reason = StopReason::converged;
            return report;
        }
    }
    report.reason = StopReason::max_iterations;
    return report;
}

}  // namespace krf
