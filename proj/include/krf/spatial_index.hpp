#pragma once

#include "krf/geometry.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace krf {

/// Every distance comparison in the library goes through this so that the
/// kd-tree and the linear scans agree bit-for-bit.
inline double squared_distance(const Vec3& a, const Vec3& b) noexcept {
    const double dx = a.x() - b.x();
    const double dy = a.y() - b.y();
    const double dz = a.z() - b.z();
    return dx * dx + dy * dy + dz * dz;
}

struct Neighbor {
    std::size_t index = 0;
    double distance = 0.0;

    friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/// Immutable kd-tree over point positions.
///
/// Ties on equal distance resolve to the lowest source index. Radius
/// queries are strict: a point at exactly `radius` is excluded.
class SpatialIndex {
public:
    static constexpr std::size_t kDefaultLeafSize = 10;

    explicit SpatialIndex(std::vector<Vec3> points, std::size_t leaf_size = kDefaultLeafSize);
    explicit SpatialIndex(const ColoredPointCloud& cloud, std::size_t leaf_size = kDefaultLeafSize);

    [[nodiscard]] std::size_t size() const noexcept { return points_.size(); }
    [[nodiscard]] const Vec3& point(std::size_t i) const { return points_[i]; }

    [[nodiscard]] Neighbor nearest(const Vec3& query) const;
    /// min(k, size()) neighbors sorted by (distance, index).
    [[nodiscard]] std::vector<Neighbor> k_nearest(const Vec3& query, std::size_t k) const;
    /// Indices with |p - center| < radius, ascending.
    [[nodiscard]] std::vector<std::size_t> radius_search(const Vec3& center, double radius) const;

private:
    struct Node {
        // Leaf when left == kNone; then [begin, end) indexes into order_.
        std::uint32_t begin = 0;
        std::uint32_t end = 0;
        std::uint32_t left = kNone;
        std::uint32_t right = kNone;
        int axis = 0;
        double split = 0.0;
        Vec3 lo = Vec3::Zero();
        Vec3 hi = Vec3::Zero();
    };
    static constexpr std::uint32_t kNone = 0xffffffffu;

    std::uint32_t build(std::uint32_t begin, std::uint32_t end);
    static double box_squared_distance(const Node& node, const Vec3& q) noexcept;

    std::vector<Vec3> points_;
    std::vector<std::uint32_t> order_;
    std::vector<Node> nodes_;
    std::size_t leaf_size_;
};

SpatialIndex build(const ColoredPointCloud& cloud);

/// Linear-scan references for the three SpatialIndex queries.
Neighbor brute_force_nearest(std::span<const Vec3> points, const Vec3& query);
Neighbor brute_force_nearest(const ColoredPointCloud& cloud, const Vec3& query);
std::vector<Neighbor> brute_force_k_nearest(std::span<const Vec3> points, const Vec3& query, std::size_t k);
std::vector<std::size_t> brute_force_radius(std::span<const Vec3> points, const Vec3& center, double radius);

}  // namespace krf
