#pragma once

#include "krf/geometry.hpp"
#include "krf/pose_fit.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace krf {

inline constexpr std::size_t kDefaultKeypointCount = 8;

/// Greedy max-min selection of `k` point indices, starting at `seed_index`
/// (default: the point farthest from the centroid). Ties go to the lowest index.
std::vector<std::size_t> farthest_point_indices(const ColoredPointCloud& model, std::size_t k,
                                                std::optional<std::size_t> seed_index = std::nullopt);

KeypointSet farthest_point_sampling(const ColoredPointCloud& model, std::size_t k = kDefaultKeypointCount,
                                    std::optional<std::size_t> seed_index = std::nullopt);

}  // namespace krf
