#include "krf/geometry.hpp"

#include "krf/error.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <cassert>
#include <cmath>

namespace krf {

Rgb::Rgb(double r, double g, double b) : v_(r, g, b) {
    for (int i = 0; i < 3; ++i) {
        if (!(v_[i] >= 0.0 && v_[i] <= 1.0)) {
            throw InvalidInput("color channel outside [0, 1]: " + std::to_string(v_[i]));
        }
    }
}

std::vector<Vec3> ColoredPointCloud::positions() const {
    std::vector<Vec3> out;
    out.reserve(points.size());
    for (const auto& p : points) out.push_back(p.position);
    return out;
}

void validate_rotation(const Mat3& rotation, double tolerance) {
    if (!rotation.allFinite()) throw InvalidPose("rotation has non-finite entries");
    const double ortho_err = (rotation.transpose() * rotation - Mat3::Identity()).cwiseAbs().maxCoeff();
    if (ortho_err > tolerance) {
        throw InvalidPose("rotation is not orthonormal (max |RtR - I| = " + std::to_string(ortho_err) + ")");
    }
    const double det = rotation.determinant();
    if (std::abs(det - 1.0) > tolerance) {
        throw InvalidPose("rotation determinant is " + std::to_string(det) + ", expected 1");
    }
}

PoseSE3::PoseSE3(const Mat3& rotation, const Vec3& translation)
    : rotation_(rotation), translation_(translation) {
    validate_rotation(rotation_);
    if (!translation_.allFinite()) throw InvalidPose("translation has non-finite entries");
}

PoseSE3 operator*(const PoseSE3& a, const PoseSE3& b) {
    PoseSE3 out;
    out.rotation_ = a.rotation_ * b.rotation_;
    out.translation_ = a.rotation_ * b.translation_ + a.translation_;
    return out;
}

Mat3 axis_angle(const Vec3& axis, double angle_rad) {
    const double n = axis.norm();
    if (!(n > 0.0)) throw InvalidInput("rotation axis must be non-zero");
    return Eigen::AngleAxisd(angle_rad, axis / n).toRotationMatrix();
}

double rotation_angle_between(const Mat3& a, const Mat3& b) {
    const Mat3 d = a.transpose() * b;
    const Vec3 skew(d(2, 1) - d(1, 2), d(0, 2) - d(2, 0), d(1, 0) - d(0, 1));
    const double sin_theta = 0.5 * skew.norm();
    const double cos_theta = 0.5 * (d.trace() - 1.0);
    return std::atan2(sin_theta, cos_theta);
}

PoseSE3 invert_pose(const PoseSE3& pose) {
    const Mat3 rt = pose.rotation().transpose();
    return {rt, -(rt * pose.translation())};
}

PoseSE3 compose(const PoseSE3& a, const PoseSE3& b) { return a * b; }

ColoredPointCloud apply_pose(const PoseSE3& pose, const ColoredPointCloud& cloud) {
    if (cloud.empty()) throw InvalidInput("apply_pose: empty cloud");
    assert(cloud.frame == Frame::object);
    ColoredPointCloud out;
    out.frame = Frame::camera;
    out.points.reserve(cloud.size());
    for (const auto& p : cloud.points) out.points.push_back({pose.apply(p.position), p.color});
    return out;
}

ColoredPointCloud to_object_frame(const PoseSE3& pose_init, const ColoredPointCloud& cloud_cam) {
    if (cloud_cam.empty()) throw InvalidInput("to_object_frame: empty cloud");
    assert(cloud_cam.frame == Frame::camera);
    // PoseSE3 is validated on construction; re-check in case of accumulated drift.
    validate_rotation(pose_init.rotation());
    ColoredPointCloud out;
    out.frame = Frame::object;
    out.points.reserve(cloud_cam.size());
    for (const auto& p : cloud_cam.points) out.points.push_back({pose_init.apply_inverse(p.position), p.color});
    return out;
}

Vec3 centroid(std::span<const Vec3> points) {
    if (points.empty()) throw InvalidInput("centroid: empty point set");
    Vec3 sum = Vec3::Zero();
    for (const auto& p : points) sum += p;
    return sum / static_cast<double>(points.size());
}

Vec3 centroid(const ColoredPointCloud& cloud) {
    if (cloud.empty()) throw InvalidInput("centroid: empty cloud");
    Vec3 sum = Vec3::Zero();
    for (const auto& p : cloud.points) sum += p.position;
    return sum / static_cast<double>(cloud.size());
}

double model_radius(const ColoredPointCloud& cloud) {
    const Vec3 c = centroid(cloud);
    double r = 0.0;
    for (const auto& p : cloud.points) r = std::max(r, (p.position - c).norm());
    return r;
}

}  // namespace krf
