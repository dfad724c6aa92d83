#pragma once

#include <Eigen/Core>

#include <optional>
#include <span>
#include <vector>

namespace krf {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// RGB triple with every channel in [0, 1].
class Rgb {
public:
    Rgb(double r, double g, double b);

    [[nodiscard]] double r() const noexcept { return v_.x(); }
    [[nodiscard]] double g() const noexcept { return v_.y(); }
    [[nodiscard]] double b() const noexcept { return v_.z(); }
    [[nodiscard]] const Vec3& vec() const noexcept { return v_; }

    friend bool operator==(const Rgb& a, const Rgb& b) noexcept { return a.v_ == b.v_; }

private:
    Vec3 v_;
};

/// A point with an optional color. Uncolored points come from completion.
struct ColoredPoint {
    Vec3 position = Vec3::Zero();
    std::optional<Rgb> color;

    [[nodiscard]] bool colored() const noexcept { return color.has_value(); }
};

enum class Frame { camera, object };

struct ColoredPointCloud {
    std::vector<ColoredPoint> points;
    Frame frame = Frame::object;

    [[nodiscard]] std::size_t size() const noexcept { return points.size(); }
    [[nodiscard]] bool empty() const noexcept { return points.empty(); }
    [[nodiscard]] const ColoredPoint& operator[](std::size_t i) const { return points[i]; }
    [[nodiscard]] std::vector<Vec3> positions() const;
};

/// Rigid transform mapping object coordinates into the camera frame.
///
/// The rotation is validated on construction: RᵀR = I and det R = 1, both
/// within 1e-9.
class PoseSE3 {
public:
    static constexpr double kOrthonormalTolerance = 1e-9;

    PoseSE3() = default;
    PoseSE3(const Mat3& rotation, const Vec3& translation);

    static PoseSE3 identity() { return {}; }

    [[nodiscard]] const Mat3& rotation() const noexcept { return rotation_; }
    [[nodiscard]] const Vec3& translation() const noexcept { return translation_; }

    [[nodiscard]] Vec3 apply(const Vec3& p) const { return rotation_ * p + translation_; }
    [[nodiscard]] Vec3 apply_inverse(const Vec3& p) const { return rotation_.transpose() * (p - translation_); }

    /// `(a * b).apply(p) == a.apply(b.apply(p))`
    friend PoseSE3 operator*(const PoseSE3& a, const PoseSE3& b);

private:
    Mat3 rotation_ = Mat3::Identity();
    Vec3 translation_ = Vec3::Zero();
};

/// Checks orthonormality and handedness; throws InvalidPose otherwise.
void validate_rotation(const Mat3& rotation, double tolerance = PoseSE3::kOrthonormalTolerance);

/// Rotation about a (not necessarily unit) axis.
Mat3 axis_angle(const Vec3& axis, double angle_rad);

/// Geodesic angle between two rotations, robust near zero.
double rotation_angle_between(const Mat3& a, const Mat3& b);

PoseSE3 invert_pose(const PoseSE3& pose);
PoseSE3 compose(const PoseSE3& a, const PoseSE3& b);

/// Maps an object-frame cloud into the camera frame: p ↦ R·p + T.
ColoredPointCloud apply_pose(const PoseSE3& pose, const ColoredPointCloud& cloud);

/// Maps a camera-frame cloud into the object frame: p ↦ Rᵀ·(p − T).
ColoredPointCloud to_object_frame(const PoseSE3& pose_init, const ColoredPointCloud& cloud_cam);

Vec3 centroid(const ColoredPointCloud& cloud);
Vec3 centroid(std::span<const Vec3> points);

/// Largest distance from the centroid to any point.
double model_radius(const ColoredPointCloud& cloud);

}  // namespace krf
