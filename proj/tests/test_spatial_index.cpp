#include "krf/error.hpp"
#include "krf/spatial_index.hpp"

#include "test_helpers.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace krf;

TEST(SpatialIndex, SinglePoint) {
    const SpatialIndex index(std::vector<Vec3>{Vec3(1, 2, 3)});
    EXPECT_EQ(index.nearest(Vec3(-5, 0, 9)).index, 0u);
}

TEST(SpatialIndex, DuplicatesAreRetained) {
    const SpatialIndex index(std::vector<Vec3>{Vec3(1, 1, 1), Vec3(1, 1, 1)});
    EXPECT_EQ(index.size(), 2u);
    EXPECT_EQ(index.radius_search(Vec3(1, 1, 1), 1e-6), (std::vector<std::size_t>{0, 1}));
    EXPECT_EQ(index.nearest(Vec3(1, 1, 1)).index, 0u);
}

TEST(SpatialIndex, HandNearest) {
    const SpatialIndex index(std::vector<Vec3>{Vec3(0, 0, 0), Vec3(1, 0, 0)});
    const Neighbor n = index.nearest(Vec3(0.4, 0, 0));
    EXPECT_EQ(n.index, 0u);
    EXPECT_DOUBLE_EQ(n.distance, 0.4);
    const Neighbor exact = index.nearest(Vec3(1, 0, 0));
    EXPECT_EQ(exact.index, 1u);
    EXPECT_EQ(exact.distance, 0.0);
}

TEST(SpatialIndex, KNearestEdgeCases) {
    Rng rng(11);
    const auto pts = test::random_points(50, rng);
    const SpatialIndex index(pts);
    const Vec3 q(0.1, 0.2, 0.3);
    const auto one = index.k_nearest(q, 1);
    ASSERT_EQ(one.size(), 1u);
    EXPECT_EQ(one[0], index.nearest(q));
    const auto all = index.k_nearest(q, 80);
    ASSERT_EQ(all.size(), pts.size());
    EXPECT_TRUE(std::is_sorted(all.begin(), all.end(), [](const Neighbor& a, const Neighbor& b) { return a.distance < b.distance; }));
}

TEST(SpatialIndex, RadiusEdgeCases) {
    const std::vector<Vec3> pts{Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 2, 0)};
    const SpatialIndex index(pts);
    EXPECT_TRUE(index.radius_search(Vec3(0.5, 5, 0), 0.1).empty());
    EXPECT_EQ(index.radius_search(Vec3(1, 0, 0), 1e-9), (std::vector<std::size_t>{1}));
    // Strict inequality: the point at exactly r is excluded.
    EXPECT_EQ(index.radius_search(Vec3(0, 0, 0), 1.0), (std::vector<std::size_t>{0}));
    EXPECT_THROW((void)index.radius_search(Vec3::Zero(), 0.0), InvalidInput);
}

TEST(SpatialIndex, TiesResolveToLowestIndex) {
    const std::vector<Vec3> pts{Vec3(1, 0, 0), Vec3(-1, 0, 0), Vec3(0, 1, 0), Vec3(0, -1, 0)};
    const SpatialIndex index(pts, 1);
    EXPECT_EQ(index.nearest(Vec3::Zero()).index, 0u);
    const auto k = index.k_nearest(Vec3::Zero(), 3);
    EXPECT_EQ(k[0].index, 0u);
    EXPECT_EQ(k[1].index, 1u);
    EXPECT_EQ(k[2].index, 2u);
}

TEST(SpatialIndex, MatchesBruteForceOnRandomClouds) {
    Rng rng(12);
    const auto pts = test::random_points(10000, rng);
    const SpatialIndex index(pts);
    for (int q = 0; q < 1000; ++q) {
        const Vec3 query(rng.uniform(-1.2, 1.2), rng.uniform(-1.2, 1.2), rng.uniform(-1.2, 1.2));
        const Neighbor a = index.nearest(query);
        const Neighbor b = brute_force_nearest(pts, query);
        ASSERT_EQ(a, b);
        const auto ka = index.k_nearest(query, 17);
        ASSERT_EQ(ka, brute_force_k_nearest(pts, query, 17));
        ASSERT_EQ(ka.front(), a);
        const double r = rng.uniform(0.01, 0.3);
        ASSERT_EQ(index.radius_search(query, r), brute_force_radius(pts, query, r));
    }
}

TEST(SpatialIndex, GridTiesMatchBruteForce) {
    // Integer lattice: many exactly equal distances.
    std::vector<Vec3> pts;
    for (int x = 0; x < 8; ++x)
        for (int y = 0; y < 8; ++y)
            for (int z = 0; z < 8; ++z) pts.emplace_back(x, y, z);
    Rng rng(13);
    std::vector<std::size_t> perm(pts.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    for (std::size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[rng.uniform_index(i)]);
    std::vector<Vec3> shuffled;
    for (auto i : perm) shuffled.push_back(pts[i]);
    const SpatialIndex index(shuffled, 4);
    for (int q = 0; q < 300; ++q) {
        const Vec3 query(rng.uniform_index(16) * 0.5, rng.uniform_index(16) * 0.5, rng.uniform_index(16) * 0.5);
        ASSERT_EQ(index.nearest(query), brute_force_nearest(shuffled, query));
        ASSERT_EQ(index.k_nearest(query, 9), brute_force_k_nearest(shuffled, query, 9));
        ASSERT_EQ(index.radius_search(query, 1.0), brute_force_radius(shuffled, query, 1.0));
    }
}

TEST(SpatialIndex, RejectsEmptyAndNonFinite) {
    EXPECT_THROW(SpatialIndex(std::vector<Vec3>{}), InvalidInput);
    EXPECT_THROW(SpatialIndex(std::vector<Vec3>{Vec3(std::nan(""), 0, 0)}), InvalidInput);
}
