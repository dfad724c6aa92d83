#pragma once

#include "krf/cikp.hpp"
#include "krf/completion.hpp"
#include "krf/geometry.hpp"
#include "krf/pose_fit.hpp"
#include "krf/synthetic.hpp"

#include <json.hpp>

#include <filesystem>

namespace krf::io {

using Json = nlohmann::json;

/// {"rotation": [[r00, r01, r02], [...], [...]], "translation": [x, y, z]}, meters.
Json pose_to_json(const PoseSE3& pose);
PoseSE3 pose_from_json(const Json& j);

/// {"keypoints": [[x, y, z], ...]}, object frame.
Json keypoints_to_json(const KeypointSet& keypoints);
KeypointSet keypoints_from_json(const Json& j);

Json cikp_config_to_json(const CikpConfig& config);
/// Missing fields keep their defaults; unknown or ill-typed fields raise ValidationError.
CikpConfig cikp_config_from_json(const Json& j, CikpConfig base = {});

Json completion_to_json(const CompletionKind& kind);
/// Relative file paths are resolved against `base_dir`.
CompletionKind completion_from_json(const Json& j, const std::filesystem::path& base_dir = {});

Json scene_spec_to_json(const synthetic::SceneSpec& spec);
synthetic::SceneSpec scene_spec_from_json(const Json& j);

Json read_json(const std::filesystem::path& path);
/// Writes `j` pretty-printed with a trailing newline.
void write_json(const Json& j, const std::filesystem::path& path);
void write_text(const std::string& text, const std::filesystem::path& path);

}  // namespace krf::io
