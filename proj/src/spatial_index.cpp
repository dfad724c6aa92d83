#include "krf/spatial_index.hpp"

#include "krf/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <utility>

namespace krf {

namespace {

struct Candidate {
    double d2;
    std::size_t index;
    // Max-heap order: the worst candidate sits on top.
    friend bool operator<(const Candidate& a, const Candidate& b) {
        return a.d2 < b.d2 || (a.d2 == b.d2 && a.index < b.index);
    }
};

bool better(double d2, std::size_t idx, double best_d2, std::size_t best_idx) {
    return d2 < best_d2 || (d2 == best_d2 && idx < best_idx);
}

}  // namespace

SpatialIndex::SpatialIndex(std::vector<Vec3> points, std::size_t leaf_size)
    : points_(std::move(points)), leaf_size_(std::max<std::size_t>(1, leaf_size)) {
    if (points_.empty()) throw InvalidInput("SpatialIndex: cannot build over an empty cloud");
    if (points_.size() >= kNone) throw InvalidInput("SpatialIndex: too many points");
    for (const auto& p : points_) {
        if (!p.allFinite()) throw InvalidInput("SpatialIndex: non-finite point");
    }
    order_.resize(points_.size());
    std::iota(order_.begin(), order_.end(), 0u);
    nodes_.reserve(2 * points_.size() / leaf_size_ + 1);
    build(0, static_cast<std::uint32_t>(points_.size()));
}

SpatialIndex::SpatialIndex(const ColoredPointCloud& cloud, std::size_t leaf_size)
    : SpatialIndex(cloud.positions(), leaf_size) {}

std::uint32_t SpatialIndex::build(std::uint32_t begin, std::uint32_t end) {
    const auto id = static_cast<std::uint32_t>(nodes_.size());
    nodes_.emplace_back();

    Vec3 lo = Vec3::Constant(std::numeric_limits<double>::infinity());
    Vec3 hi = -lo;
    for (std::uint32_t i = begin; i < end; ++i) {
        lo = lo.cwiseMin(points_[order_[i]]);
        hi = hi.cwiseMax(points_[order_[i]]);
    }

    Node node;
    node.begin = begin;
    node.end = end;
    node.lo = lo;
    node.hi = hi;

    if (end - begin > leaf_size_) {
        int axis = 0;
        (hi - lo).maxCoeff(&axis);
        const std::uint32_t mid = begin + (end - begin) / 2;
        std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                         [&](std::uint32_t a, std::uint32_t b) {
                             const double pa = points_[a][axis];
                             const double pb = points_[b][axis];
                             return pa < pb || (pa == pb && a < b);
                         });
        node.axis = axis;
        node.split = points_[order_[mid]][axis];
        nodes_[id] = node;
        const std::uint32_t left = build(begin, mid);
        const std::uint32_t right = build(mid, end);
        nodes_[id].left = left;
        nodes_[id].right = right;
    } else {
        nodes_[id] = node;
    }
    return id;
}

double SpatialIndex::box_squared_distance(const Node& node, const Vec3& q) noexcept {
    double d[3];
    for (int a = 0; a < 3; ++a) {
        if (q[a] < node.lo[a]) {
            d[a] = node.lo[a] - q[a];
        } else if (q[a] > node.hi[a]) {
            d[a] = q[a] - node.hi[a];
        } else {
            d[a] = 0.0;
        }
    }
    return d[0] * d[0] + d[1] * d[1] + d[2] * d[2];
}

Neighbor SpatialIndex::nearest(const Vec3& query) const {
    double best_d2 = std::numeric_limits<double>::infinity();
    std::size_t best_idx = std::numeric_limits<std::size_t>::max();

    std::vector<std::uint32_t> stack{0};
    while (!stack.empty()) {
        const Node& node = nodes_[stack.back()];
        stack.pop_back();
        if (box_squared_distance(node, query) > best_d2) continue;
        if (node.left == kNone) {
            for (std::uint32_t i = node.begin; i < node.end; ++i) {
                const std::size_t idx = order_[i];
                const double d2 = squared_distance(points_[idx], query);
                if (better(d2, idx, best_d2, best_idx)) {
                    best_d2 = d2;
                    best_idx = idx;
                }
            }
            continue;
        }
        // Push the far child first so the near child is explored first.
        const bool go_left = query[node.axis] < node.split;
        stack.push_back(go_left ? node.right : node.left);
        stack.push_back(go_left ? node.left : node.right);
    }
    return {best_idx, std::sqrt(best_d2)};
}

std::vector<Neighbor> SpatialIndex::k_nearest(const Vec3& query, std::size_t k) const {
    if (k == 0) throw InvalidInput("k_nearest: k must be positive");
    k = std::min(k, points_.size());

    std::priority_queue<Candidate> heap;
    std::vector<std::uint32_t> stack{0};
    while (!stack.empty()) {
        const Node& node = nodes_[stack.back()];
        stack.pop_back();
        if (heap.size() == k && box_squared_distance(node, query) > heap.top().d2) continue;
        if (node.left == kNone) {
            for (std::uint32_t i = node.begin; i < node.end; ++i) {
                const Candidate c{squared_distance(points_[order_[i]], query), order_[i]};
                if (heap.size() < k) {
                    heap.push(c);
                } else if (c < heap.top()) {
                    heap.pop();
                    heap.push(c);
                }
            }
            continue;
        }
        const bool go_left = query[node.axis] < node.split;
        stack.push_back(go_left ? node.right : node.left);
        stack.push_back(go_left ? node.left : node.right);
    }

    std::vector<Neighbor> out(heap.size());
    for (std::size_t i = out.size(); i-- > 0;) {
        out[i] = {heap.top().index, std::sqrt(heap.top().d2)};
        heap.pop();
    }
    return out;
}

std::vector<std::size_t> SpatialIndex::radius_search(const Vec3& center, double radius) const {
    if (!(radius > 0.0)) throw InvalidInput("radius_search: radius must be positive");
    std::vector<std::size_t> out;
    std::vector<std::uint32_t> stack{0};
    while (!stack.empty()) {
        const Node& node = nodes_[stack.back()];
        stack.pop_back();
        if (std::sqrt(box_squared_distance(node, center)) >= radius) continue;
        if (node.left == kNone) {
            for (std::uint32_t i = node.begin; i < node.end; ++i) {
                if (std::sqrt(squared_distance(points_[order_[i]], center)) < radius) out.push_back(order_[i]);
            }
            continue;
        }
        stack.push_back(node.left);
        stack.push_back(node.right);
    }
    std::sort(out.begin(), out.end());
    return out;
}

SpatialIndex build(const ColoredPointCloud& cloud) { return SpatialIndex(cloud); }

Neighbor brute_force_nearest(std::span<const Vec3> points, const Vec3& query) {
    if (points.empty()) throw InvalidInput("brute_force_nearest: empty cloud");
    double best_d2 = std::numeric_limits<double>::infinity();
    std::size_t best_idx = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double d2 = squared_distance(points[i], query);
        if (d2 < best_d2) {
            best_d2 = d2;
            best_idx = i;
        }
    }
    return {best_idx, std::sqrt(best_d2)};
}

Neighbor brute_force_nearest(const ColoredPointCloud& cloud, const Vec3& query) {
    const auto pts = cloud.positions();
    return brute_force_nearest(pts, query);
}

std::vector<Neighbor> brute_force_k_nearest(std::span<const Vec3> points, const Vec3& query, std::size_t k) {
    if (k == 0) throw InvalidInput("brute_force_k_nearest: k must be positive");
    if (points.empty()) throw InvalidInput("brute_force_k_nearest: empty cloud");
    std::vector<Candidate> all;
    all.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) all.push_back({squared_distance(points[i], query), i});
    k = std::min(k, all.size());
    std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k), all.end());
    std::vector<Neighbor> out;
    out.reserve(k);
    for (std::size_t i = 0; i < k; ++i) out.push_back({all[i].index, std::sqrt(all[i].d2)});
    return out;
}

std::vector<std::size_t> brute_force_radius(std::span<const Vec3> points, const Vec3& center, double radius) {
    if (!(radius > 0.0)) throw InvalidInput("brute_force_radius: radius must be positive");
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (std::sqrt(squared_distance(points[i], center)) < radius) out.push_back(i);
    }
    return out;
}

}  // namespace krf
