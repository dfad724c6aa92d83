#include "krf/kernels.hpp"

#include "krf/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>

namespace krf::kernels {

namespace {

double serial_sum(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
}

std::ptrdiff_t ssize(std::span<const Vec3> s) { return static_cast<std::ptrdiff_t>(s.size()); }

}  // namespace

namespace serial {

std::vector<Vec3> transform(const PoseSE3& pose, std::span<const Vec3> points) {
    std::vector<Vec3> out(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) out[i] = pose.apply(points[i]);
    return out;
}

std::vector<Neighbor> nearest_all(std::span<const Vec3> points, std::span<const Vec3> queries) {
    std::vector<Neighbor> out(queries.size());
    for (std::size_t i = 0; i < queries.size(); ++i) out[i] = brute_force_nearest(points, queries[i]);
    return out;
}

double mean_nearest_distance(std::span<const Vec3> from, std::span<const Vec3> to) {
    if (from.empty() || to.empty()) throw InvalidInput("mean_nearest_distance: empty input");
    std::vector<double> d(from.size());
    for (std::size_t i = 0; i < from.size(); ++i) d[i] = brute_force_nearest(to, from[i]).distance;
    return serial_sum(d) / static_cast<double>(from.size());
}

double mean_paired_distance(std::span<const Vec3> a, std::span<const Vec3> b) {
    if (a.empty() || a.size() != b.size()) throw InvalidInput("mean_paired_distance: size mismatch");
    std::vector<double> d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = std::sqrt(squared_distance(a[i], b[i]));
    return serial_sum(d) / static_cast<double>(a.size());
}

double max_pairwise_distance(std::span<const Vec3> points) {
    double best = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) best = std::max(best, squared_distance(points[i], points[j]));
    }
    return std::sqrt(best);
}

std::size_t update_min_distances(std::span<const Vec3> points, const Vec3& added, std::span<double> min_d2) {
    std::size_t arg = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        min_d2[i] = std::min(min_d2[i], squared_distance(points[i], added));
        if (min_d2[i] > min_d2[arg]) arg = i;
    }
    return arg;
}

}  // namespace serial

namespace omp {

std::vector<Vec3> transform(const PoseSE3& pose, std::span<const Vec3> points) {
    std::vector<Vec3> out(points.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < ssize(points); ++i) out[i] = pose.apply(points[i]);
    return out;
}

std::vector<Neighbor> nearest_all(std::span<const Vec3> points, std::span<const Vec3> queries) {
    if (points.empty()) throw InvalidInput("nearest_all: empty cloud");
    std::vector<Neighbor> out(queries.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < ssize(queries); ++i) out[i] = brute_force_nearest(points, queries[i]);
    return out;
}

std::vector<Neighbor> nearest_all(const SpatialIndex& index, std::span<const Vec3> queries) {
    std::vector<Neighbor> out(queries.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < ssize(queries); ++i) out[i] = index.nearest(queries[i]);
    return out;
}

double mean_nearest_distance(std::span<const Vec3> from, std::span<const Vec3> to) {
    if (from.empty() || to.empty()) throw InvalidInput("mean_nearest_distance: empty input");
    std::vector<double> d(from.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < ssize(from); ++i) d[i] = brute_force_nearest(to, from[i]).distance;
    return serial_sum(d) / static_cast<double>(from.size());
}

double mean_paired_distance(std::span<const Vec3> a, std::span<const Vec3> b) {
    if (a.empty() || a.size() != b.size()) throw InvalidInput("mean_paired_distance: size mismatch");
    std::vector<double> d(a.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < ssize(a); ++i) d[i] = std::sqrt(squared_distance(a[i], b[i]));
    return serial_sum(d) / static_cast<double>(a.size());
}

double max_pairwise_distance(std::span<const Vec3> points) {
    std::vector<double> row_max(points.size(), 0.0);
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t i = 0; i < ssize(points); ++i) {
        double best = 0.0;
        for (std::size_t j = static_cast<std::size_t>(i) + 1; j < points.size(); ++j) {
            best = std::max(best, squared_distance(points[i], points[j]));
        }
        row_max[i] = best;
    }
    double best = 0.0;
    for (double v : row_max) best = std::max(best, v);
    return std::sqrt(best);
}

std::size_t update_min_distances(std::span<const Vec3> points, const Vec3& added, std::span<double> min_d2) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < ssize(points); ++i) {
        min_d2[i] = std::min(min_d2[i], squared_distance(points[i], added));
    }
    std::size_t arg = 0;
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (min_d2[i] > min_d2[arg]) arg = i;
    }
    return arg;
}

}  // namespace omp

}  // namespace krf::kernels
