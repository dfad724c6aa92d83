#include "krf/synthetic.hpp"

#include "krf/error.hpp"
#include "krf/keypoints.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace krf::synthetic {

namespace {

double quantize(double c) { return std::round(std::clamp(c, 0.0, 1.0) * 255.0) / 255.0; }

Rgb gradient_color(const Vec3& p, const Vec3& half_extent) {
    const Vec3 c = (Vec3::Constant(0.5) + 0.5 * p.cwiseQuotient(half_extent));
    return {quantize(c.x()), quantize(c.y()), quantize(c.z())};
}

Rgb two_tone_color(const Vec3& p) {
    if (p.x() >= 0.0) return {230.0 / 255.0, 40.0 / 255.0, 40.0 / 255.0};
    return {40.0 / 255.0, 200.0 / 255.0, 40.0 / 255.0};
}

Vec3 unit_vector(Rng& rng) {
    for (;;) {
        const Vec3 v(rng.normal(), rng.normal(), rng.normal());
        const double n = v.norm();
        if (n > 1e-12) return v / n;
    }
}

struct Surface {
    Vec3 position;
    Vec3 normal;
};

Surface sample_box(const Box& b, Rng& rng) {
    const double ax = b.height * b.depth;
    const double ay = b.width * b.depth;
    const double az = b.width * b.height;
    const Vec3 half(b.width / 2, b.height / 2, b.depth / 2);
    const double pick = rng.uniform(0.0, 2.0 * (ax + ay + az));
    const double sign_pick = rng.uniform();
    const double sign = sign_pick < 0.5 ? 1.0 : -1.0;
    Vec3 p(rng.uniform(-half.x(), half.x()), rng.uniform(-half.y(), half.y()), rng.uniform(-half.z(), half.z()));
    int axis = 2;
    if (pick < 2.0 * ax) {
        axis = 0;
    } else if (pick < 2.0 * (ax + ay)) {
        axis = 1;
    }
    p[axis] = sign * half[axis];
    Vec3 n = Vec3::Zero();
    n[axis] = sign;
    return {p, n};
}

Surface sample_cylinder(const Cylinder& c, Rng& rng) {
    const double lateral = 2.0 * std::numbers::pi * c.radius * c.height;
    const double cap = std::numbers::pi * c.radius * c.radius;
    const double pick = rng.uniform(0.0, lateral + 2.0 * cap);
    if (pick < lateral) {
        const double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
        const double z = rng.uniform(-c.height / 2, c.height / 2);
        const Vec3 n(std::cos(theta), std::sin(theta), 0.0);
        return {Vec3(c.radius * n.x(), c.radius * n.y(), z), n};
    }
    const double sign = pick < lateral + cap ? 1.0 : -1.0;
    const double rho = c.radius * std::sqrt(rng.uniform());
    const double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
    return {Vec3(rho * std::cos(theta), rho * std::sin(theta), sign * c.height / 2), Vec3(0, 0, sign)};
}

Surface sample_sphere(const Sphere& s, Rng& rng) {
    const Vec3 n = unit_vector(rng);
    return {s.radius * n, n};
}

}  // namespace

std::string shape_name(const Shape& shape) {
    switch (shape.index()) {
        case 0: return "box";
        case 1: return "cylinder";
        default: return "sphere";
    }
}

void SceneSpec::validate() const {
    std::vector<std::string> bad;
    if (const auto* b = std::get_if<Box>(&shape)) {
        if (!(b->width > 0.0)) bad.push_back("shape.width");
        if (!(b->height > 0.0)) bad.push_back("shape.height");
        if (!(b->depth > 0.0)) bad.push_back("shape.depth");
    } else if (const auto* c = std::get_if<Cylinder>(&shape)) {
        if (!(c->radius > 0.0)) bad.push_back("shape.radius");
        if (!(c->height > 0.0)) bad.push_back("shape.height");
    } else if (const auto* s = std::get_if<Sphere>(&shape)) {
        if (!(s->radius > 0.0)) bad.push_back("shape.radius");
    }
    if (keypoint_count < 3) bad.push_back("keypoints");
    if (samples < std::max<std::size_t>(3, keypoint_count)) bad.push_back("samples");
    if (!(visibility > 0.0 && visibility <= 1.0)) bad.push_back("visibility");
    if (!(noise_sigma >= 0.0)) bad.push_back("noise_sigma");
    if (!(max_angle_deg >= 0.0)) bad.push_back("max_angle_deg");
    if (!(max_translation >= 0.0)) bad.push_back("max_translation");
    if (!std::isfinite(flip_deg)) bad.push_back("flip_deg");
    if (!bad.empty()) {
        std::string msg = "invalid scene spec fields:";
        for (const auto& f : bad) msg += " " + f;
        throw ValidationError(msg);
    }
}

SampledShape sample_shape(const SceneSpec& spec, Rng& rng) {
    spec.validate();
    ColoredPointCloud cloud;
    cloud.frame = Frame::object;
    cloud.points.reserve(spec.samples);
    std::vector<Vec3> normals;
    normals.reserve(spec.samples);

    Vec3 half;
    double diameter = 0.0;
    if (const auto* b = std::get_if<Box>(&spec.shape)) {
        half = Vec3(b->width, b->height, b->depth) / 2.0;
        diameter = std::sqrt(b->width * b->width + b->height * b->height + b->depth * b->depth);
    } else if (const auto* c = std::get_if<Cylinder>(&spec.shape)) {
        half = Vec3(c->radius, c->radius, c->height / 2.0);
        diameter = std::sqrt(4.0 * c->radius * c->radius + c->height * c->height);
    } else {
        const auto& s = std::get<Sphere>(spec.shape);
        half = Vec3::Constant(s.radius);
        diameter = 2.0 * s.radius;
    }

    for (std::size_t i = 0; i < spec.samples; ++i) {
        Surface s;
        if (const auto* b = std::get_if<Box>(&spec.shape)) {
            s = sample_box(*b, rng);
        } else if (const auto* c = std::get_if<Cylinder>(&spec.shape)) {
            s = sample_cylinder(*c, rng);
        } else {
            s = sample_sphere(std::get<Sphere>(spec.shape), rng);
        }
        const Rgb color = spec.two_tone ? two_tone_color(s.position) : gradient_color(s.position, half);
        cloud.points.push_back({s.position, color});
        normals.push_back(s.normal);
    }
    return {ObjectModel(std::move(cloud), false, diameter), std::move(normals)};
}

SampledShape sample_shape(const SceneSpec& spec) {
    Rng rng(spec.rng_seed);
    return sample_shape(spec, rng);
}

ColoredPointCloud cull_visibility(const ColoredPointCloud& model_cam, std::span<const Vec3> normals_cam,
                                  const Vec3& view_direction, double fraction_target, Rng& rng) {
    if (model_cam.empty()) throw InvalidInput("cull_visibility: empty cloud");
    if (normals_cam.size() != model_cam.size()) throw InvalidInput("cull_visibility: one normal per point required");
    if (!(fraction_target > 0.0 && fraction_target <= 1.0)) {
        throw InvalidInput("cull_visibility: fraction_target must lie in (0, 1]");
    }
    const double vn = view_direction.norm();
    if (!(vn > 0.0)) throw InvalidInput("cull_visibility: view direction must be non-zero");
    const Vec3 v = view_direction / vn;

    std::vector<std::size_t> front;
    for (std::size_t i = 0; i < model_cam.size(); ++i) {
        if (normals_cam[i].dot(v) < 0.0) front.push_back(i);
    }
    const auto target =
        static_cast<std::size_t>(std::llround(fraction_target * static_cast<double>(model_cam.size())));

    ColoredPointCloud out;
    out.frame = model_cam.frame;
    if (front.size() <= target) {
        for (std::size_t i : front) out.points.push_back(model_cam[i]);
        return out;
    }
    for (std::size_t k : rng.sample_without_replacement(front.size(), target)) out.points.push_back(model_cam[front[k]]);
    return out;
}

PoseSE3 perturb_pose(const PoseSE3& gt, double max_angle_deg, double max_translation, Rng& rng) {
    if (max_angle_deg < 0.0 || max_translation < 0.0) throw InvalidInput("perturb_pose: bounds must be non-negative");
    const Vec3 axis = unit_vector(rng);
    const double angle = rng.uniform() * max_angle_deg * std::numbers::pi / 180.0;
    const Vec3 dir = unit_vector(rng);
    const double radius = max_translation * std::cbrt(rng.uniform());
    if (max_angle_deg == 0.0 && max_translation == 0.0) return gt;
    return {gt.rotation() * axis_angle(axis, angle), gt.translation() + radius * dir};
}

ColoredPointCloud add_noise(const ColoredPointCloud& cloud, double sigma, Rng& rng) {
    if (!(sigma >= 0.0)) throw InvalidInput("add_noise: sigma must be non-negative");
    ColoredPointCloud out = cloud;
    if (sigma == 0.0) return out;
    for (auto& p : out.points) p.position += sigma * Vec3(rng.normal(), rng.normal(), rng.normal());
    return out;
}

PoseSE3 random_rotation_pose(const Vec3& translation, Rng& rng) {
    // Uniform rotation from a unit quaternion.
    Eigen::Vector4d q(rng.normal(), rng.normal(), rng.normal(), rng.normal());
    while (q.norm() < 1e-12) q = Eigen::Vector4d(rng.normal(), rng.normal(), rng.normal(), rng.normal());
    q.normalize();
    const Eigen::Quaterniond quat(q[0], q[1], q[2], q[3]);
    return {quat.toRotationMatrix(), translation};
}

SyntheticScene generate_scene(const SceneSpec& spec, const SampledShape& shape, std::size_t frame_index) {
    spec.validate();
    Rng rng(mix_seed(spec.rng_seed, frame_index));

    PoseSE3 gt;
    if (spec.gt_pose) {
        gt = *spec.gt_pose;
    } else {
        const Vec3 t(rng.uniform(-0.05, 0.05), rng.uniform(-0.05, 0.05), rng.uniform(0.5, 0.8));
        gt = random_rotation_pose(t, rng);
    }

    const ColoredPointCloud model_cam = apply_pose(gt, shape.model.cloud());
    ColoredPointCloud visible;
    if (spec.visibility >= 1.0) {
        visible = model_cam;
    } else {
        std::vector<Vec3> normals_cam(shape.normals.size());
        for (std::size_t i = 0; i < normals_cam.size(); ++i) normals_cam[i] = gt.rotation() * shape.normals[i];
        const Vec3 view = gt.translation().norm() > 0.0 ? Vec3(gt.translation()) : Vec3(Vec3::UnitZ());
        visible = cull_visibility(model_cam, normals_cam, view, spec.visibility, rng);
        if (visible.empty()) throw InvalidInput("generate_scene: no visible points survived culling");
    }
    visible = add_noise(visible, spec.noise_sigma, rng);

    PoseSE3 init = perturb_pose(gt, spec.max_angle_deg, spec.max_translation, rng);
    if (spec.flip_deg != 0.0) {
        init = PoseSE3(init.rotation() * axis_angle(Vec3::UnitZ(), spec.flip_deg * std::numbers::pi / 180.0),
                       init.translation());
    }

    return {shape.model, std::move(visible), gt, init,
            farthest_point_sampling(shape.model.cloud(), spec.keypoint_count)};
}

SyntheticScene generate_scene(const SceneSpec& spec, std::size_t frame_index) {
    return generate_scene(spec, sample_shape(spec), frame_index);
}

}  // namespace krf::synthetic
