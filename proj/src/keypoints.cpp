#include "krf/keypoints.hpp"

#include "krf/error.hpp"
#include "krf/kernels.hpp"

#include <limits>

namespace krf {

std::vector<std::size_t> farthest_point_indices(const ColoredPointCloud& model, std::size_t k,
                                                std::optional<std::size_t> seed_index) {
    if (k < 3) throw InvalidInput("farthest_point_sampling: k must be at least 3");
    if (k > model.size()) {
        throw InvalidInput("farthest_point_sampling: k = " + std::to_string(k) + " exceeds cloud size " +
                           std::to_string(model.size()));
    }
    const std::vector<Vec3> pts = model.positions();

    std::size_t current = 0;
    if (seed_index) {
        if (*seed_index >= pts.size()) throw InvalidInput("farthest_point_sampling: seed index out of range");
        current = *seed_index;
    } else {
        const Vec3 c = centroid(std::span<const Vec3>(pts));
        double best = -1.0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const double d2 = squared_distance(pts[i], c);
            if (d2 > best) {
                best = d2;
                current = i;
            }
        }
    }

    std::vector<double> min_d2(pts.size(), std::numeric_limits<double>::infinity());
    std::vector<std::size_t> chosen;
    chosen.reserve(k);
    for (;;) {
        chosen.push_back(current);
        // Selected points are pinned below every candidate.
        min_d2[current] = -1.0;
        if (chosen.size() == k) break;
        current = kernels::omp::update_min_distances(pts, pts[current], min_d2);
    }
    return chosen;
}

KeypointSet farthest_point_sampling(const ColoredPointCloud& model, std::size_t k,
                                    std::optional<std::size_t> seed_index) {
    std::vector<Vec3> kps;
    for (std::size_t i : farthest_point_indices(model, k, seed_index)) kps.push_back(model[i].position);
    return KeypointSet(std::move(kps));
}

}  // namespace krf
