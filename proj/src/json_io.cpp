#include "krf/json_io.hpp"

#include "krf/error.hpp"

#include <fstream>
#include <set>

namespace krf::io {

namespace {

Vec3 vec_from_json(const Json& j, const char* what) {
    if (!j.is_array() || j.size() != 3) throw ValidationError(std::string(what) + ": expected an array of 3 numbers");
    Vec3 v;
    for (int i = 0; i < 3; ++i) {
        if (!j[i].is_number()) throw ValidationError(std::string(what) + ": expected numbers");
        v[i] = j[i].get<double>();
    }
    return v;
}

Json vec_to_json(const Vec3& v) { return Json::array({v.x(), v.y(), v.z()}); }

void reject_unknown(const Json& j, const std::set<std::string>& known, const char* what) {
    std::string bad;
    for (const auto& [key, _] : j.items()) {
        if (!known.contains(key)) bad += " " + key;
    }
    if (!bad.empty()) throw ValidationError(std::string("unknown ") + what + " fields:" + bad);
}

template <typename T>
void read_field(const Json& j, const char* key, T& out, std::vector<std::string>& bad) {
    if (!j.contains(key)) return;
    try {
        out = j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        bad.emplace_back(key);
    }
}

void throw_if_bad(const std::vector<std::string>& bad, const char* what) {
    if (bad.empty()) return;
    std::string msg = std::string("invalid ") + what + " fields:";
    for (const auto& b : bad) msg += " " + b;
    throw ValidationError(msg);
}

}  // namespace

Json pose_to_json(const PoseSE3& pose) {
    Json rot = Json::array();
    for (int r = 0; r < 3; ++r) rot.push_back(Json::array({pose.rotation()(r, 0), pose.rotation()(r, 1), pose.rotation()(r, 2)}));
    return Json{{"rotation", rot}, {"translation", vec_to_json(pose.translation())}};
}

PoseSE3 pose_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("rotation") || !j.contains("translation")) {
        throw ValidationError("pose JSON needs 'rotation' and 'translation'");
    }
    const Json& rot = j.at("rotation");
    if (!rot.is_array() || rot.size() != 3) throw ValidationError("pose rotation must be a 3x3 array");
    Mat3 r;
    for (int i = 0; i < 3; ++i) r.row(i) = vec_from_json(rot[i], "rotation row").transpose();
    return {r, vec_from_json(j.at("translation"), "translation")};
}

Json keypoints_to_json(const KeypointSet& keypoints) {
    Json arr = Json::array();
    for (const auto& k : keypoints.points()) arr.push_back(vec_to_json(k));
    return Json{{"keypoints", arr}};
}

KeypointSet keypoints_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("keypoints") || !j.at("keypoints").is_array()) {
        throw ValidationError("keypoint JSON needs a 'keypoints' array");
    }
    std::vector<Vec3> kps;
    for (const auto& k : j.at("keypoints")) kps.push_back(vec_from_json(k, "keypoint"));
    return KeypointSet(std::move(kps));
}

Json cikp_config_to_json(const CikpConfig& c) {
    return Json{{"radius_factor", c.radius_factor},
                {"m1", c.m1},
                {"m2", c.m2},
                {"epsilon", c.epsilon},
                {"tau", c.tau},
                {"max_iterations", c.max_iterations},
                {"k_candidates", c.k_candidates},
                {"rng_seed", c.rng_seed},
                {"use_color", c.use_color},
                {"mode", c.mode == RegistrationMode::per_keypoint ? "per_keypoint" : "global"}};
}

CikpConfig cikp_config_from_json(const Json& j, CikpConfig c) {
    if (!j.is_object()) throw ValidationError("cikp config must be an object");
    reject_unknown(j,
                   {"radius_factor", "m1", "m2", "epsilon", "tau", "max_iterations", "k_candidates", "rng_seed",
                    "use_color", "mode"},
                   "cikp");
    std::vector<std::string> bad;
    read_field(j, "radius_factor", c.radius_factor, bad);
    read_field(j, "m1", c.m1, bad);
    read_field(j, "m2", c.m2, bad);
    read_field(j, "epsilon", c.epsilon, bad);
    read_field(j, "tau", c.tau, bad);
    read_field(j, "max_iterations", c.max_iterations, bad);
    read_field(j, "k_candidates", c.k_candidates, bad);
    read_field(j, "rng_seed", c.rng_seed, bad);
    read_field(j, "use_color", c.use_color, bad);
    if (j.contains("mode")) {
        const auto& m = j.at("mode");
        if (m == "per_keypoint") {
            c.mode = RegistrationMode::per_keypoint;
        } else if (m == "global") {
            c.mode = RegistrationMode::global;
        } else {
            bad.emplace_back("mode");
        }
    }
    throw_if_bad(bad, "cikp");
    try {
        c.validate();
    } catch (const InvalidInput& e) {
        throw ValidationError(std::string("cikp config: ") + e.what());
    }
    return c;
}

Json completion_to_json(const CompletionKind& kind) {
    if (const auto* f = std::get_if<FileKind>(&kind)) return Json{{"kind", "file"}, {"path", f->path.string()}};
    if (const auto* m = std::get_if<MirrorKind>(&kind)) return Json{{"kind", "mirror"}, {"normal", vec_to_json(m->normal)}};
    return Json{{"kind", "null"}};
}

CompletionKind completion_from_json(const Json& j, const std::filesystem::path& base_dir) {
    if (j.is_string()) return completion_from_json(Json{{"kind", j}}, base_dir);
    if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
        throw ValidationError("completion needs a 'kind' of null, file or mirror");
    }
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "null") return NullKind{};
    if (kind == "mirror") {
        MirrorKind m;
        if (j.contains("normal")) m.normal = vec_from_json(j.at("normal"), "completion.normal");
        if (!(m.normal.norm() > 0.0)) throw ValidationError("completion.normal must be non-zero");
        return m;
    }
    if (kind == "file") {
        if (!j.contains("path") || !j.at("path").is_string()) throw ValidationError("file completion needs 'path'");
        std::filesystem::path p = j.at("path").get<std::string>();
        if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
        return FileKind{p};
    }
    throw ValidationError("unknown completion kind '" + kind + "'");
}

Json scene_spec_to_json(const synthetic::SceneSpec& s) {
    Json shape;
    if (const auto* b = std::get_if<synthetic::Box>(&s.shape)) {
        shape = {{"type", "box"}, {"width", b->width}, {"height", b->height}, {"depth", b->depth}};
    } else if (const auto* c = std::get_if<synthetic::Cylinder>(&s.shape)) {
        shape = {{"type", "cylinder"}, {"radius", c->radius}, {"height", c->height}};
    } else {
        shape = {{"type", "sphere"}, {"radius", std::get<synthetic::Sphere>(s.shape).radius}};
    }
    Json j{{"shape", shape},
           {"two_tone", s.two_tone},
           {"samples", s.samples},
           {"visibility", s.visibility},
           {"noise_sigma", s.noise_sigma},
           {"max_angle_deg", s.max_angle_deg},
           {"max_translation", s.max_translation},
           {"flip_deg", s.flip_deg},
           {"keypoints", s.keypoint_count},
           {"seed", s.rng_seed}};
    if (s.gt_pose) j["gt_pose"] = pose_to_json(*s.gt_pose);
    return j;
}

synthetic::SceneSpec scene_spec_from_json(const Json& j) {
    if (!j.is_object()) throw ValidationError("scene spec must be a JSON object");
    reject_unknown(j,
                   {"shape", "two_tone", "samples", "visibility", "noise_sigma", "max_angle_deg", "max_translation",
                    "flip_deg", "keypoints", "seed", "gt_pose", "count"},
                   "scene spec");
    synthetic::SceneSpec s;
    std::vector<std::string> bad;
    if (j.contains("shape")) {
        const Json& sh = j.at("shape");
        const std::string type = sh.is_object() && sh.contains("type") && sh.at("type").is_string()
                                     ? sh.at("type").get<std::string>()
                                     : std::string();
        auto num = [&](const char* key, double fallback) {
            if (!sh.contains(key)) return fallback;
            if (!sh.at(key).is_number()) {
                bad.push_back(std::string("shape.") + key);
                return fallback;
            }
            return sh.at(key).get<double>();
        };
        if (type == "box") {
            s.shape = synthetic::Box{num("width", 0.1), num("height", 0.1), num("depth", 0.1)};
        } else if (type == "cylinder") {
            s.shape = synthetic::Cylinder{num("radius", 0.05), num("height", 0.1)};
        } else if (type == "sphere") {
            s.shape = synthetic::Sphere{num("radius", 0.05)};
        } else {
            bad.emplace_back("shape.type");
        }
    }
    read_field(j, "two_tone", s.two_tone, bad);
    read_field(j, "samples", s.samples, bad);
    read_field(j, "visibility", s.visibility, bad);
    read_field(j, "noise_sigma", s.noise_sigma, bad);
    read_field(j, "max_angle_deg", s.max_angle_deg, bad);
    read_field(j, "max_translation", s.max_translation, bad);
    read_field(j, "flip_deg", s.flip_deg, bad);
    read_field(j, "keypoints", s.keypoint_count, bad);
    read_field(j, "seed", s.rng_seed, bad);
    if (j.contains("gt_pose")) {
        try {
            s.gt_pose = pose_from_json(j.at("gt_pose"));
        } catch (const Error&) {
            bad.emplace_back("gt_pose");
        }
    }
    throw_if_bad(bad, "scene spec");
    s.validate();
    return s;
}

Json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open JSON file: " + path.string());
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("invalid JSON in " + path.string() + ": " + e.what(), e.byte);
    }
}

void write_text(const std::string& text, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << text;
    if (!out) throw IoError("write failed: " + path.string());
}

void write_json(const Json& j, const std::filesystem::path& path) { write_text(j.dump(2) + "\n", path); }

}  // namespace krf::io
