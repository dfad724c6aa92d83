#pragma once

#include "krf/geometry.hpp"
#include "krf/spatial_index.hpp"

#include <cstddef>

namespace krf {

/// Weight threshold ε (meters) of the color-weighted distance.
struct ColorDistanceParams {
    static constexpr double kDefaultEpsilon = 0.02;

    double epsilon = kDefaultEpsilon;

    void validate() const;
};

/// D = D1 + D2 / w, with D1 the spatial distance, D2 the RGB distance and
/// w = max(D1 / ε, 1). Color counts fully within ε and decays beyond it.
/// Both points must be colored.
double colored_distance(const ColoredPoint& p1, const ColoredPoint& p2, const ColorDistanceParams& params);

double euclidean_distance(const ColoredPoint& p1, const ColoredPoint& p2);

struct Match {
    std::size_t index = 0;
    /// The distance used to pick the match (color-weighted or Euclidean).
    double distance = 0.0;
};

inline constexpr std::size_t kDefaultCandidates = 10;

/// Closest source point to `target_point`.
///
/// Uncolored targets use the Euclidean nearest neighbor. Colored targets
/// shortlist the `k_candidates` Euclidean-nearest source points and return
/// the one with the smallest color-weighted distance (ties: lowest index).
/// With k_candidates >= |source| the whole source is scanned, which makes
/// the result the exact global minimizer.
Match match_point(const ColoredPoint& target_point, const SpatialIndex& source_index,
                  const ColoredPointCloud& source_cloud, const ColorDistanceParams& params,
                  std::size_t k_candidates = kDefaultCandidates);

}  // namespace krf
