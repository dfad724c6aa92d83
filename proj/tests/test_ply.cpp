#include "krf/error.hpp"
#include "krf/ply.hpp"

#include "test_helpers.hpp"

#include <gtest/gtest.h>

#include <cstring>
#include <fstream>

using namespace krf;

namespace {

void write_file(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

const char* kAsciiHeader =
    "ply\n"
    "format ascii 1.0\n"
    "comment three colored points\n"
    "element vertex 3\n"
    "property float x\n"
    "property float y\n"
    "property float z\n"
    "property uchar red\n"
    "property uchar green\n"
    "property uchar blue\n"
    "end_header\n";

}  // namespace

TEST(Ply, ReadsAsciiFixture) {
    test::TempDir dir("ply");
    write_file(dir / "a.ply", std::string(kAsciiHeader) + "0 0 0 255 0 0\n1 0 0 0 255 0\n0 1 0.5 0 0 255\n");
    const auto cloud = ply_read(dir / "a.ply");
    ASSERT_EQ(cloud.size(), 3u);
    EXPECT_EQ(cloud[2].position, Vec3(0, 1, 0.5));
    EXPECT_EQ(*cloud[0].color, Rgb(1, 0, 0));
    EXPECT_EQ(*cloud[2].color, Rgb(0, 0, 1));
}

TEST(Ply, BinaryRoundTripIsBitExact) {
    test::TempDir dir("ply");
    Rng rng(91);
    auto cloud = test::random_cloud(1000, rng, false);
    cloud.points[0].position = Vec3(1e-300, -0.0, 123456789.123456789);
    ply_write(cloud, dir / "b.ply");
    const auto back = ply_read(dir / "b.ply");
    ASSERT_EQ(back.size(), cloud.size());
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        ASSERT_EQ(std::memcmp(back[i].position.data(), cloud[i].position.data(), sizeof(double) * 3), 0);
        ASSERT_FALSE(back[i].colored());
    }
}

TEST(Ply, AsciiRoundTripIsExact) {
    test::TempDir dir("ply");
    Rng rng(92);
    auto cloud = test::random_cloud(200, rng, false);
    for (auto& p : cloud.points) {
        p.color = Rgb(static_cast<double>(rng.uniform_index(256)) / 255.0, 0.0, 1.0);
    }
    ply_write(cloud, dir / "c.ply", PlyFormat::ascii);
    const auto back = ply_read(dir / "c.ply");
    ASSERT_EQ(back.size(), cloud.size());
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        ASSERT_EQ(back[i].position, cloud[i].position);
        ASSERT_EQ(back[i].color, cloud[i].color);
    }
}

TEST(Ply, SkipsExtraPropertiesAndLaterElements) {
    test::TempDir dir("ply");
    write_file(dir / "d.ply",
               "ply\nformat ascii 1.0\nelement vertex 2\nproperty double x\nproperty float nx\nproperty double y\n"
               "property double z\nelement face 1\nproperty list uchar int vertex_indices\nend_header\n"
               "1 9 2 3\n4 9 5 6\n3 0 1 1\n");
    const auto cloud = ply_read(dir / "d.ply");
    ASSERT_EQ(cloud.size(), 2u);
    EXPECT_EQ(cloud[1].position, Vec3(4, 5, 6));
}

TEST(Ply, TruncatedBinaryBodyIsAnError) {
    test::TempDir dir("ply");
    Rng rng(93);
    ply_write(test::random_cloud(10, rng, true), dir / "e.ply");
    const std::string full = read_file(dir / "e.ply");
    write_file(dir / "t.ply", full.substr(0, full.size() - 5));
    try {
        (void)ply_read(dir / "t.ply");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("truncated"), std::string::npos);
        EXPECT_NE(std::string(e.what()).find("byte offset"), std::string::npos);
    }
    write_file(dir / "x.ply", full + "junk");
    EXPECT_THROW((void)ply_read(dir / "x.ply"), ParseError);
}

TEST(Ply, TruncatedAsciiBodyIsAnError) {
    test::TempDir dir("ply");
    write_file(dir / "f.ply", std::string(kAsciiHeader) + "0 0 0 255 0 0\n1 0 0 0 255 0\n");
    EXPECT_THROW((void)ply_read(dir / "f.ply"), ParseError);
}

TEST(Ply, MalformedHeaders) {
    test::TempDir dir("ply");
    write_file(dir / "g.ply", "plx\n");
    EXPECT_THROW((void)ply_read(dir / "g.ply"), ParseError);
    write_file(dir / "h.ply", "ply\nformat binary_big_endian 1.0\nelement vertex 0\nend_header\n");
    EXPECT_THROW((void)ply_read(dir / "h.ply"), ParseError);
    write_file(dir / "i.ply", "ply\nformat ascii 1.0\nelement vertex 1\nproperty float x\nproperty float y\nend_header\n0 0\n");
    EXPECT_THROW((void)ply_read(dir / "i.ply"), ParseError);
    write_file(dir / "j.ply", "ply\nformat ascii 1.0\nelement vertex 1\nproperty float x\nproperty float y\nproperty float z\n");
    EXPECT_THROW((void)ply_read(dir / "j.ply"), ParseError);
    write_file(dir / "k.ply", std::string(kAsciiHeader) + "0 0 0 256 0 0\n0 0 0 0 0 0\n0 0 0 0 0 0\n");
    EXPECT_THROW((void)ply_read(dir / "k.ply"), ParseError);
    EXPECT_THROW((void)ply_read(dir / "missing.ply"), IoError);
}

TEST(Ply, WriteRejectsEmptyAndMixedClouds) {
    test::TempDir dir("ply");
    EXPECT_THROW(ply_write(ColoredPointCloud{}, dir / "z.ply"), InvalidInput);
    ColoredPointCloud mixed;
    mixed.points = {{Vec3::Zero(), Rgb(1, 1, 1)}, {Vec3::UnitX(), std::nullopt}};
    EXPECT_THROW(ply_write(mixed, dir / "z.ply"), InvalidInput);
}
