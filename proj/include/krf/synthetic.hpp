#pragma once

#include "krf/geometry.hpp"
#include "krf/metrics.hpp"
#include "krf/pose_fit.hpp"
#include "krf/rng.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace krf::synthetic {

struct Box {
    double width = 0.1;   // x
    double height = 0.1;  // y
    double depth = 0.1;   // z
};
struct Cylinder {
    double radius = 0.05;  // axis along z
    double height = 0.1;
};
struct Sphere {
    double radius = 0.05;
};
using Shape = std::variant<Box, Cylinder, Sphere>;

std::string shape_name(const Shape& shape);

struct SceneSpec {
    Shape shape = Box{};
    /// Two-tone coloring splits the surface by the sign of model-frame x.
    bool two_tone = false;
    std::size_t samples = 2048;
    /// Ground-truth pose; a random orientation in front of the camera when absent.
    std::optional<PoseSE3> gt_pose;
    /// 1 means the whole surface is observed (no culling).
    double visibility = 1.0;
    double noise_sigma = 0.0;
    double max_angle_deg = 0.0;
    double max_translation = 0.0;
    /// Extra rotation about the model z axis applied to the initial pose
    /// (e.g. 180 for the two-tone ambiguity experiments).
    double flip_deg = 0.0;
    std::size_t keypoint_count = 8;
    std::uint64_t rng_seed = 0;

    /// Throws ValidationError listing every invalid field.
    void validate() const;
};

/// Surface samples plus their parametric outward normals.
struct SampledShape {
    ObjectModel model;
    std::vector<Vec3> normals;
};

struct SyntheticScene {
    ObjectModel model;
    ColoredPointCloud visible_cam;
    PoseSE3 gt_pose;
    PoseSE3 init_pose;
    KeypointSet keypoints;
};

/// Uniform area-weighted surface samples with deterministic colors.
/// Colors are quantized to multiples of 1/255 so PLY round trips are lossless.
SampledShape sample_shape(const SceneSpec& spec, Rng& rng);
SampledShape sample_shape(const SceneSpec& spec);

/// Keeps points whose normal faces the viewer (n · view_direction < 0), then
/// drops points at random down to round(fraction_target × |cloud|).
ColoredPointCloud cull_visibility(const ColoredPointCloud& model_cam, std::span<const Vec3> normals_cam,
                                  const Vec3& view_direction, double fraction_target, Rng& rng);

/// gt rotated by a random-axis angle uniform in [0, max_angle_deg] (object
/// frame) and shifted by a vector uniform in the ball of radius max_translation.
PoseSE3 perturb_pose(const PoseSE3& gt, double max_angle_deg, double max_translation, Rng& rng);

/// Independent N(0, sigma²) offset per coordinate; colors untouched.
ColoredPointCloud add_noise(const ColoredPointCloud& cloud, double sigma, Rng& rng);

PoseSE3 random_rotation_pose(const Vec3& translation, Rng& rng);

/// Builds the model from spec.rng_seed and frame `frame_index` from a derived seed.
SyntheticScene generate_scene(const SceneSpec& spec, std::size_t frame_index = 0);
SyntheticScene generate_scene(const SceneSpec& spec, const SampledShape& shape, std::size_t frame_index);

}  // namespace krf::synthetic
