#pragma once

#include "krf/geometry.hpp"
#include "krf/rng.hpp"

#include <Eigen/LU>

#include <cmath>
#include <filesystem>
#include <string>
#include <numbers>
#include <vector>

#include <unistd.h>

namespace krf::test {

inline ColoredPointCloud cloud_of(std::initializer_list<Vec3> pts, Frame frame = Frame::object) {
    ColoredPointCloud c;
    c.frame = frame;
    for (const auto& p : pts) c.points.push_back({p, std::nullopt});
    return c;
}

inline std::vector<Vec3> random_points(std::size_t n, Rng& rng, double half = 1.0) {
    std::vector<Vec3> pts(n);
    for (auto& p : pts) p = Vec3(rng.uniform(-half, half), rng.uniform(-half, half), rng.uniform(-half, half));
    return pts;
}

inline ColoredPointCloud random_cloud(std::size_t n, Rng& rng, bool colored = true, double half = 1.0) {
    ColoredPointCloud c;
    for (const auto& p : random_points(n, rng, half)) {
        ColoredPoint cp{p, std::nullopt};
        if (colored) cp.color = Rgb(rng.uniform(), rng.uniform(), rng.uniform());
        c.points.push_back(cp);
    }
    return c;
}

inline PoseSE3 random_pose(Rng& rng, double max_t = 1.0) {
    const Vec3 axis(rng.normal(), rng.normal(), rng.normal());
    const double angle = rng.uniform(0.0, std::numbers::pi);
    return {axis_angle(axis, angle), Vec3(rng.uniform(-max_t, max_t), rng.uniform(-max_t, max_t), rng.uniform(-max_t, max_t))};
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static int counter = 0;
        path_ = std::filesystem::temp_directory_path() /
                ("krf_test_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    [[nodiscard]] const std::filesystem::path& path() const noexcept { return path_; }
    [[nodiscard]] std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

}  // namespace krf::test
