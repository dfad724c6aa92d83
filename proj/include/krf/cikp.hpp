#pragma once

#include "krf/correspondence.hpp"
#include "krf/geometry.hpp"
#include "krf/pose_fit.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace krf {

enum class RegistrationMode {
    /// Translate each keypoint by its neighborhood registration, then fit the pose to the keypoints.
    per_keypoint,
    /// Single ICP-style rigid fit over all target correspondences (ablation baseline).
    global,
};

struct CikpConfig {
    /// Search radius r = radius_factor × model radius.
    double radius_factor = 0.7;
    /// Keypoints with fewer neighbors than m1 are left untouched.
    std::size_t m1 = 10;
    /// Neighborhoods larger than m2 are subsampled to m2 points.
    std::size_t m2 = 500;
    double epsilon = ColorDistanceParams::kDefaultEpsilon;
    /// Stop once the mean correspondence distance of an iteration drops below tau (meters).
    double tau = 5e-4;
    std::size_t max_iterations = 20;
    std::size_t k_candidates = kDefaultCandidates;
    std::uint64_t rng_seed = 0;
    /// When false, colored target points are matched by Euclidean distance only.
    bool use_color = true;
    RegistrationMode mode = RegistrationMode::per_keypoint;

    void validate() const;
};

struct IterationRecord {
    double mean_distance = 0.0;
    std::vector<std::size_t> correspondence_counts;
    std::vector<bool> skipped;
};

enum class StopReason { converged, max_iterations, insufficient_correspondences, degenerate_fit };

std::string to_string(StopReason reason);

struct RefineReport {
    PoseSE3 final_pose;
    std::size_t iterations_run = 0;
    bool converged = false;
    StopReason reason = StopReason::max_iterations;
    std::vector<IterationRecord> iterations;
};

/// Refines `init_pose` by registering the colored object-frame model against
/// the camera-frame target, one keypoint neighborhood at a time.
///
/// Each iteration transforms the model and keypoints by the current pose,
/// gathers target points within r of every keypoint, matches them against
/// the transformed model, shifts the keypoint by the best translation and
/// finally fits the pose to all shifted keypoints. Single-threaded;
/// deterministic for a given config.rng_seed.
RefineReport refine(const ColoredPointCloud& source_model, const ColoredPointCloud& target,
                    const KeypointSet& keypoints, const PoseSE3& init_pose, const CikpConfig& config);

}  // namespace krf
