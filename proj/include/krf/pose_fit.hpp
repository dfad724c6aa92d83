#pragma once

#include "krf/geometry.hpp"

#include <span>
#include <vector>

namespace krf {

/// K model-frame keypoints, K >= 3.
class KeypointSet {
public:
    KeypointSet() = default;
    explicit KeypointSet(std::vector<Vec3> keypoints);

    [[nodiscard]] std::size_t size() const noexcept { return keypoints_.size(); }
    [[nodiscard]] const std::vector<Vec3>& points() const noexcept { return keypoints_; }
    [[nodiscard]] const Vec3& operator[](std::size_t i) const { return keypoints_[i]; }

private:
    std::vector<Vec3> keypoints_;
};

/// Translation T minimizing Σ |targets[j] - (matched_source[j] + T)|², i.e.
/// centroid(targets) - centroid(matched_source).
Vec3 fit_translation(std::span<const Vec3> matched_source, std::span<const Vec3> targets);

/// Least-squares rigid transform (Kabsch) with R·source[i] + T ≈ target[i].
/// Reflections are corrected so det R = +1.
///
/// Throws InvalidInput for fewer than 3 pairs and DegenerateConfiguration
/// when the source is collinear or the cross-covariance has rank < 2.
PoseSE3 fit_rigid(std::span<const Vec3> source, std::span<const Vec3> target);
PoseSE3 fit_rigid(const KeypointSet& source_keypoints, std::span<const Vec3> target_keypoints);

}  // namespace krf
