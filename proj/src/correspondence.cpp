#include "krf/correspondence.hpp"

#include "krf/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace krf {

void ColorDistanceParams::validate() const {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw InvalidInput("epsilon must be positive and finite");
}

double colored_distance(const ColoredPoint& p1, const ColoredPoint& p2, const ColorDistanceParams& params) {
    if (!p1.colored() || !p2.colored()) throw InvalidInput("colored_distance: both points must carry color");
    const double d1 = std::sqrt(squared_distance(p1.position, p2.position));
    const double d2 = std::sqrt(squared_distance(p1.color->vec(), p2.color->vec()));
    const double w = std::max(d1 / params.epsilon, 1.0);
    return d1 + d2 / w;
}

double euclidean_distance(const ColoredPoint& p1, const ColoredPoint& p2) {
    return std::sqrt(squared_distance(p1.position, p2.position));
}

Match match_point(const ColoredPoint& target_point, const SpatialIndex& source_index,
                  const ColoredPointCloud& source_cloud, const ColorDistanceParams& params,
                  std::size_t k_candidates) {
    if (source_cloud.empty()) throw InvalidInput("match_point: empty source");
    if (k_candidates == 0) throw InvalidInput("match_point: k_candidates must be positive");
    if (source_index.size() != source_cloud.size()) throw InvalidInput("match_point: index/cloud size mismatch");

    if (!target_point.colored()) {
        const Neighbor n = source_index.nearest(target_point.position);
        return {n.index, n.distance};
    }

    Match best{0, std::numeric_limits<double>::infinity()};
    auto consider = [&](std::size_t idx) {
        const ColoredPoint& s = source_cloud[idx];
        const double d = s.colored() ? colored_distance(target_point, s, params) : euclidean_distance(target_point, s);
        if (d < best.distance || (d == best.distance && idx < best.index)) best = {idx, d};
    };

    if (k_candidates < source_cloud.size()) {
        for (const Neighbor& n : source_index.k_nearest(target_point.position, k_candidates)) consider(n.index);
        return best;
    }

    // Exact search. D >= D1, so once a candidate gives D = B only points
    // with D1 <= B can still win; collect those with a radius query.
    for (const Neighbor& n : source_index.k_nearest(target_point.position, kDefaultCandidates)) consider(n.index);
    const double bound = std::nextafter(best.distance, std::numeric_limits<double>::infinity());
    for (std::size_t idx : source_index.radius_search(target_point.position, bound)) consider(idx);
    return best;
}

}  // namespace krf
