#include "krf/cikp.hpp"
#include "krf/completion.hpp"
#include "krf/error.hpp"
#include "krf/ply.hpp"

#include "test_helpers.hpp"

#include <gtest/gtest.h>

using namespace krf;

namespace {

ColoredPointCloud camera_cloud(std::size_t n, Rng& rng) {
    auto c = test::random_cloud(n, rng, true, 0.05);
    c.frame = Frame::camera;
    return c;
}

}  // namespace

TEST(NullCompletion, ReturnsNothing) {
    Rng rng(61);
    const NullCompletion provider;
    EXPECT_TRUE(provider.complete(test::random_cloud(10, rng)).empty());
    EXPECT_FALSE(provider.enabled());
    EXPECT_EQ(kind_name(NullKind{}), "null");
}

TEST(MirrorCompletion, HandCases) {
    const auto out = mirror_completion(test::cloud_of({Vec3(1, 0, 0), Vec3(0, 2, 3)}), Vec3(1, 0, 0));
    ASSERT_EQ(out.size(), 2u);
    EXPECT_EQ(out[0].position, Vec3(-1, 0, 0));
    EXPECT_EQ(out[1].position, Vec3(0, 2, 3));  // on the plane
    EXPECT_FALSE(out[0].colored());
    EXPECT_THROW(MirrorCompletion(Vec3::Zero()), InvalidInput);
}

TEST(MirrorCompletion, IsAnInvolution) {
    Rng rng(62);
    const auto cloud = test::random_cloud(200, rng);
    const Vec3 n(0.3, -1.2, 0.7);
    const auto twice = mirror_completion(mirror_completion(cloud, n), n);
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        EXPECT_LE((twice[i].position - cloud[i].position).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(FileCompletion, LoadsUncoloredCloud) {
    test::TempDir dir("completion");
    Rng rng(63);
    const auto dense = test::random_cloud(8192, rng, true);
    ply_write(dense, dir / "dense.ply");
    const FileCompletion provider(dir / "dense.ply");
    const auto out = provider.complete(test::random_cloud(5, rng));
    ASSERT_EQ(out.size(), 8192u);
    for (std::size_t i = 0; i < out.size(); ++i) {
        ASSERT_FALSE(out[i].colored());
        ASSERT_EQ(out[i].position, dense[i].position);
    }
    EXPECT_THROW(FileCompletion(dir / "missing.ply"), IoError);
}

TEST(BuildTarget, NullProviderGivesVisibleCloud) {
    Rng rng(64);
    const auto visible = camera_cloud(100, rng);
    const auto target = build_target(visible, test::random_pose(rng), NullCompletion{});
    ASSERT_EQ(target.size(), visible.size());
    for (std::size_t i = 0; i < visible.size(); ++i) {
        EXPECT_EQ(target[i].position, visible[i].position);
        EXPECT_EQ(target[i].color, visible[i].color);
    }
}

TEST(BuildTarget, MirrorDoublesCardinality) {
    Rng rng(65);
    const auto visible = camera_cloud(100, rng);
    const auto target = build_target(visible, test::random_pose(rng), MirrorCompletion{});
    ASSERT_EQ(target.size(), 200u);
    for (std::size_t i = 0; i < 100; ++i) {
        EXPECT_EQ(target[i].position, visible[i].position);
        EXPECT_EQ(target[i].color, visible[i].color);
        EXPECT_FALSE(target[100 + i].colored());
    }
}

TEST(BuildTarget, FileProviderAddsDensePoints) {
    test::TempDir dir("target");
    Rng rng(66);
    ply_write(test::random_cloud(8192, rng, false), dir / "dense.ply");
    const auto visible = camera_cloud(2048, rng);
    const auto target = build_target(visible, test::random_pose(rng), FileCompletion(dir / "dense.ply"));
    EXPECT_EQ(target.size(), 10240u);
}

TEST(BuildTarget, IdentityInitKeepsPointsVerbatim) {
    Rng rng(67);
    const auto visible = camera_cloud(50, rng);
    const Vec3 n = Vec3::UnitZ();
    const auto target = build_target(visible, PoseSE3::identity(), MirrorCompletion(n));
    auto object_frame = visible;
    object_frame.frame = Frame::object;
    const auto completed = mirror_completion(object_frame, n);
    for (std::size_t i = 0; i < 50; ++i) EXPECT_EQ(target[50 + i].position, completed[i].position);
}

TEST(BuildTarget, UsesInitPoseForRoundTrip) {
    // Mirroring about object z under init pose T=(0,0,1): camera z=1.2 maps to 0.8.
    const PoseSE3 init(Mat3::Identity(), Vec3(0, 0, 1));
    ColoredPointCloud visible;
    visible.frame = Frame::camera;
    visible.points.push_back({Vec3(0, 0, 1.2), Rgb(1, 1, 1)});
    const auto target = build_target(visible, init, MirrorCompletion{});
    EXPECT_NEAR(target[1].position.z(), 0.8, 1e-15);
}

TEST(BuildTarget, NullCompletionEqualsVisibleOnlyRefinement) {
    Rng rng(68);
    const auto model = test::random_cloud(300, rng, true, 0.05);
    const PoseSE3 gt(axis_angle(Vec3(1, 1, 0), 0.05), Vec3(0, 0, 0.5));
    auto visible = apply_pose(gt, model);
    const auto target = build_target(visible, gt, NullCompletion{});
    const KeypointSet kps(std::vector<Vec3>{model[0].position, model[1].position, model[2].position, model[3].position});
    CikpConfig cfg;
    const auto a = refine(model, target, kps, gt, cfg);
    const auto b = refine(model, visible, kps, gt, cfg);
    EXPECT_EQ(a.final_pose.rotation(), b.final_pose.rotation());
    EXPECT_EQ(a.final_pose.translation(), b.final_pose.translation());
}

TEST(CompletionKind, MakeProvider) {
    EXPECT_EQ(make_provider(NullKind{})->name(), "null");
    EXPECT_EQ(make_provider(MirrorKind{})->name(), "mirror");
    EXPECT_TRUE(make_provider(MirrorKind{})->enabled());
}
