#include "krf/error.hpp"
#include "krf/metrics.hpp"

#include "test_helpers.hpp"

#include <gtest/gtest.h>

#include <numbers>

using namespace krf;

namespace {

PoseSE3 rz180() { return {axis_angle(Vec3::UnitZ(), std::numbers::pi), Vec3::Zero()}; }

double brute_adds(const ObjectModel& m, const PoseSE3& pred, const PoseSE3& gt) {
    double sum = 0.0;
    for (const auto& p : m.cloud().points) {
        const Vec3 a = pred.apply(p.position);
        double best = std::numeric_limits<double>::infinity();
        for (const auto& q : m.cloud().points) best = std::min(best, (a - gt.apply(q.position)).norm());
        sum += best;
    }
    return sum / static_cast<double>(m.size());
}

double brute_chamfer(const ColoredPointCloud& a, const ColoredPointCloud& b) {
    auto one_way = [](const ColoredPointCloud& x, const ColoredPointCloud& y) {
        double s = 0.0;
        for (const auto& p : x.points) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& q : y.points) best = std::min(best, (p.position - q.position).norm());
            s += best;
        }
        return s / static_cast<double>(x.size());
    };
    return one_way(a, b) + one_way(b, a);
}

}  // namespace

TEST(Add, HandValues) {
    const ObjectModel two(test::cloud_of({Vec3(1, 0, 0), Vec3(-1, 0, 0)}), false);
    EXPECT_EQ(two.diameter(), 2.0);
    EXPECT_EQ(add_metric(two, PoseSE3::identity(), PoseSE3::identity()), 0.0);
    EXPECT_NEAR(add_metric(two, rz180(), PoseSE3::identity()), 2.0, 1e-12);
    const PoseSE3 shifted(Mat3::Identity(), Vec3(0.3, -0.4, 0));
    EXPECT_NEAR(add_metric(two, shifted, PoseSE3::identity()), 0.5, 1e-15);
}

TEST(AddS, HandValues) {
    const ObjectModel two(test::cloud_of({Vec3(1, 0, 0), Vec3(-1, 0, 0)}), true);
    EXPECT_EQ(add_s_metric(two, PoseSE3::identity(), PoseSE3::identity()), 0.0);
    EXPECT_NEAR(add_s_metric(two, rz180(), PoseSE3::identity()), 0.0, 1e-15);
    EXPECT_NEAR(add_or_adds(two, rz180(), PoseSE3::identity()), 0.0, 1e-15);
    const ObjectModel asym(two.cloud(), false);
    EXPECT_NEAR(add_or_adds(asym, rz180(), PoseSE3::identity()), 2.0, 1e-12);
}

TEST(AddS, EqualsBruteForceOnSmallModels) {
    Rng rng(71);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + rng.uniform_index(49);
        const ObjectModel model(test::random_cloud(n, rng, false), true);
        const PoseSE3 pred = test::random_pose(rng), gt = test::random_pose(rng);
        ASSERT_EQ(add_s_metric(model, pred, gt), brute_adds(model, pred, gt));
    }
}

TEST(AddS, NeverExceedsAdd) {
    Rng rng(72);
    for (int trial = 0; trial < 1000; ++trial) {
        const ObjectModel model(test::random_cloud(2 + rng.uniform_index(200), rng, false), false);
        const PoseSE3 pred = test::random_pose(rng), gt = test::random_pose(rng);
        ASSERT_LE(add_s_metric(model, pred, gt), add_metric(model, pred, gt));
    }
}

TEST(AddAuc, HandValues) {
    EXPECT_EQ(add_auc(std::vector<double>{0, 0, 0}), 1.0);
    EXPECT_EQ(add_auc(std::vector<double>{0.2, 0.11}), 0.0);
    EXPECT_NEAR(add_auc(std::vector<double>{0.05}), 0.5, 1e-12);
    EXPECT_NEAR(add_auc(std::vector<double>{0.0, 0.2}), 0.5, 1e-12);
    EXPECT_THROW((void)add_auc(std::vector<double>{}), InvalidInput);
    EXPECT_THROW((void)add_auc(std::vector<double>{-0.1}), InvalidInput);
}

TEST(AddAuc, MatchesNumericIntegral) {
    Rng rng(73);
    std::vector<double> d(50);
    for (auto& x : d) x = rng.uniform(0.0, 0.15);
    // Midpoint rule on accuracy(t) = fraction{d < t}.
    const int steps = 200000;
    double area = 0.0;
    for (int s = 0; s < steps; ++s) {
        const double t = (s + 0.5) * 0.1 / steps;
        double frac = 0.0;
        for (double x : d) frac += x < t;
        area += frac / static_cast<double>(d.size());
    }
    EXPECT_NEAR(add_auc(d), area / steps, 1e-4);
}

TEST(AddAuc, MonotoneUnderDecrease) {
    Rng rng(74);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<double> d(10);
        for (auto& x : d) x = rng.uniform(0.0, 0.15);
        auto smaller = d;
        smaller[rng.uniform_index(d.size())] *= rng.uniform();
        ASSERT_GE(add_auc(smaller), add_auc(d));
    }
}

TEST(AccuracyAtDiameter, HandValues) {
    EXPECT_EQ(accuracy_at_diameter(std::vector<double>{0, 0}, 0.1), 1.0);
    EXPECT_EQ(accuracy_at_diameter(std::vector<double>{0.005, 0.02}, 0.1, 0.1), 0.5);
    EXPECT_EQ(accuracy_at_diameter(std::vector<double>{0.1 * 0.2}, 0.2), 0.0);  // strict boundary
    const ObjectModel two(test::cloud_of({Vec3(1, 0, 0), Vec3(-1, 0, 0)}), false);
    EXPECT_EQ(accuracy_at_diameter(std::vector<double>{0.19, 0.21}, two), 0.5);
}

TEST(Chamfer, HandValues) {
    const auto a = test::cloud_of({Vec3::Zero()});
    EXPECT_EQ(chamfer_loss(a, a), 0.0);
    EXPECT_EQ(chamfer_loss(a, test::cloud_of({Vec3(1, 0, 0)})), 2.0);
}

TEST(Chamfer, SymmetricAndMatchesBruteForce) {
    Rng rng(75);
    for (int trial = 0; trial < 100; ++trial) {
        const auto a = test::random_cloud(1 + rng.uniform_index(60), rng, false);
        const auto b = test::random_cloud(1 + rng.uniform_index(60), rng, false);
        ASSERT_NEAR(chamfer_loss(a, b), brute_chamfer(a, b), 1e-12);
        ASSERT_NEAR(chamfer_loss(a, b), chamfer_loss(b, a), 1e-12);
    }
}

TEST(OffsetLoss, HandValues) {
    const OffsetField zero{1, 1, {Vec3::Zero()}};
    EXPECT_EQ(offset_loss(zero, zero), 0.0);
    EXPECT_EQ(offset_loss(OffsetField{1, 1, {Vec3(1, 0, 0)}}, zero), 1.0);
    const OffsetField pred{2, 1, {Vec3(3, 4, 0), Vec3(1, 1, 1)}};
    const OffsetField gt{2, 1, {Vec3::Zero(), Vec3(1, 1, 1)}};
    EXPECT_EQ(offset_loss(pred, gt), 2.5);
    EXPECT_THROW((void)offset_loss(pred, zero), InvalidInput);
}

TEST(CombinedLoss, HandValues) {
    const LossWeights w;
    EXPECT_EQ(combined_loss(0, 0, 0, w), 0.0);
    EXPECT_NEAR(combined_loss(0.1, 0.2, 0.05, w), 0.8, 1e-12);
    const LossWeights no_cd{2.0, 3.0, 0.0};
    EXPECT_NEAR(combined_loss(0.1, 0.2, 123.0, no_cd), 0.8, 1e-12);
    EXPECT_THROW((LossWeights{-1, 1, 1}.validate()), InvalidInput);
}
