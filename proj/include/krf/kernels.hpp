#pragma once

// Data-parallel inner loops. Each kernel has a serial reference and an
// OpenMP version; the OpenMP versions compute per-element results in
// parallel and reduce serially, so both produce bit-identical output.

#include "krf/geometry.hpp"
#include "krf/spatial_index.hpp"

#include <span>
#include <vector>

namespace krf::kernels {

namespace serial {

std::vector<Vec3> transform(const PoseSE3& pose, std::span<const Vec3> points);
/// Brute-force nearest neighbor for each query.
std::vector<Neighbor> nearest_all(std::span<const Vec3> points, std::span<const Vec3> queries);
/// Mean of the per-query nearest distances, by linear scan.
double mean_nearest_distance(std::span<const Vec3> from, std::span<const Vec3> to);
/// Mean |a[i] - b[i]|.
double mean_paired_distance(std::span<const Vec3> a, std::span<const Vec3> b);
double max_pairwise_distance(std::span<const Vec3> points);
/// min_d2[i] = min(min_d2[i], |points[i] - added|²); returns argmax of the result (lowest index on ties).
std::size_t update_min_distances(std::span<const Vec3> points, const Vec3& added, std::span<double> min_d2);

}  // namespace serial

namespace omp {

std::vector<Vec3> transform(const PoseSE3& pose, std::span<const Vec3> points);
std::vector<Neighbor> nearest_all(std::span<const Vec3> points, std::span<const Vec3> queries);
double mean_nearest_distance(std::span<const Vec3> from, std::span<const Vec3> to);
double mean_paired_distance(std::span<const Vec3> a, std::span<const Vec3> b);
double max_pairwise_distance(std::span<const Vec3> points);
std::size_t update_min_distances(std::span<const Vec3> points, const Vec3& added, std::span<double> min_d2);

/// Nearest neighbor per query through a kd-tree, queries in parallel.
std::vector<Neighbor> nearest_all(const SpatialIndex& index, std::span<const Vec3> queries);

}  // namespace omp

}  // namespace krf::kernels
