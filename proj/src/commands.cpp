#include "krf/commands.hpp"

#include "krf/error.hpp"
#include "krf/keypoints.hpp"
#include "krf/ply.hpp"
#include "krf/rng.hpp"

#include <algorithm>
#include <chrono>
#include <charconv>
#include <cstdio>
#include <ctime>
#include <exception>
#include <map>
#include <set>
#include <sstream>

namespace krf::cli {

namespace fs = std::filesystem;
using io::Json;

namespace {

fs::path resolve(const fs::path& p, const fs::path& base) { return p.is_relative() && !base.empty() ? base / p : p; }

fs::path existing_path(const Json& j, const char* key, const fs::path& base) {
    if (!j.at(key).is_string()) throw ValidationError(std::string("'") + key + "' must be a path string");
    fs::path p = resolve(j.at(key).get<std::string>(), base);
    if (!fs::exists(p)) throw ValidationError(std::string(key) + " path not found: " + p.string());
    return p;
}

std::string frame_name(std::size_t i) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "frame_%06zu", i);
    return buf;
}

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

std::optional<double> number_or_null(const Json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    if (!j.at(key).is_number()) throw ValidationError(std::string("report field '") + key + "' must be a number");
    return j.at(key).get<double>();
}

std::string now_iso8601() {
    const std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

Json timing_json(double wall_time_s) { return Json{{"generated_at", now_iso8601()}, {"wall_time_s", wall_time_s}}; }

std::string mode_name(RegistrationMode m) { return m == RegistrationMode::per_keypoint ? "per_keypoint" : "global"; }

// Per-frame completion file takes precedence over a shared one.
CompletionKind completion_for_frame(const CompletionKind& kind, const FrameInput& frame) {
    if (const auto* f = std::get_if<FileKind>(&kind)) {
        if (!frame.dir.empty() && f->path.is_relative() && fs::exists(frame.dir / f->path)) {
            return FileKind{frame.dir / f->path};
        }
    }
    return kind;
}

}  // namespace

std::string format_number(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return {buf, res.ptr};
}

RunConfig run_config_from_json(const Json& j, const fs::path& base_dir) {
    if (!j.is_object()) throw ValidationError("run config must be a JSON object");
    static const std::set<std::string> known{"object",   "symmetric", "diameter", "keypoint_count", "cikp",
                                             "completion", "model",   "dataset",  "visible",        "init_pose",
                                             "gt_pose",  "keypoints", "synthetic"};
    std::string unknown;
    for (const auto& [key, _] : j.items()) {
        if (!known.contains(key)) unknown += " " + key;
    }
    if (!unknown.empty()) throw ValidationError("unknown run config fields:" + unknown);

    RunConfig c;
    try {
        if (j.contains("object")) c.object = j.at("object").get<std::string>();
        if (j.contains("symmetric")) c.symmetric = j.at("symmetric").get<bool>();
        if (j.contains("diameter")) c.diameter = j.at("diameter").get<double>();
        if (j.contains("keypoint_count")) c.keypoint_count = j.at("keypoint_count").get<std::size_t>();
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("run config: ") + e.what());
    }
    if (c.keypoint_count < 3) throw ValidationError("keypoint_count must be at least 3");
    if (c.diameter && !(*c.diameter > 0.0)) throw ValidationError("diameter must be positive");
    if (j.contains("cikp")) c.cikp = io::cikp_config_from_json(j.at("cikp"));
    if (j.contains("completion")) {
        c.completion = io::completion_from_json(j.at("completion"), base_dir);
    }

    if (j.contains("model")) c.model = existing_path(j, "model", base_dir);
    if (j.contains("dataset")) c.dataset = existing_path(j, "dataset", base_dir);
    if (j.contains("visible")) c.visible = existing_path(j, "visible", base_dir);
    if (j.contains("init_pose")) c.init_pose = existing_path(j, "init_pose", base_dir);
    if (j.contains("gt_pose")) c.gt_pose = existing_path(j, "gt_pose", base_dir);
    if (j.contains("keypoints")) c.keypoints = existing_path(j, "keypoints", base_dir);
    if (j.contains("synthetic")) {
        Json spec = j.at("synthetic");
        if (spec.is_object() && spec.contains("count")) {
            c.synthetic_count = spec.at("count").get<std::size_t>();
            if (c.synthetic_count == 0) throw ValidationError("synthetic.count must be positive");
        }
        c.synthetic = io::scene_spec_from_json(spec);
    }

    const int sources = (c.dataset ? 1 : 0) + (c.visible ? 1 : 0) + (c.synthetic ? 1 : 0);
    if (sources != 1) throw ValidationError("run config needs exactly one of 'dataset', 'visible' or 'synthetic'");
    if (c.visible && !c.init_pose) throw ValidationError("single-frame input needs 'init_pose'");
    if (c.visible && !c.model) throw ValidationError("single-frame input needs 'model'");
    if (const auto* f = std::get_if<FileKind>(&c.completion); f && !c.dataset && !fs::exists(f->path)) {
        throw ValidationError("completion file not found: " + f->path.string());
    }
    return c;
}

RunConfig load_run_config(const fs::path& path) {
    if (!fs::exists(path)) throw ValidationError("config file not found: " + path.string());
    return run_config_from_json(io::read_json(path), path.parent_path());
}

LoadedRun load_inputs(const RunConfig& config) {
    if (config.synthetic) {
        const synthetic::SceneSpec& spec = *config.synthetic;
        const synthetic::SampledShape shape = synthetic::sample_shape(spec);
        ObjectModel model(shape.model.cloud(), config.symmetric, shape.model.diameter());
        std::vector<FrameInput> frames;
        for (std::size_t i = 0; i < config.synthetic_count; ++i) {
            auto scene = synthetic::generate_scene(spec, shape, i);
            frames.push_back({frame_name(i), std::move(scene.visible_cam), scene.init_pose, scene.gt_pose,
                              std::move(scene.keypoints), {}});
        }
        return {std::move(model), std::move(frames)};
    }

    std::optional<double> diameter = config.diameter;
    bool symmetric = config.symmetric;
    fs::path model_path;
    if (config.dataset) {
        const fs::path meta_path = *config.dataset / "dataset.json";
        if (fs::exists(meta_path)) {
            const Json meta = io::read_json(meta_path);
            if (!diameter && meta.contains("diameter")) diameter = meta.at("diameter").get<double>();
            if (meta.contains("symmetric")) symmetric = symmetric || meta.at("symmetric").get<bool>();
        }
        model_path = config.model ? *config.model : *config.dataset / "model.ply";
    } else {
        model_path = *config.model;
    }
    if (!fs::exists(model_path)) throw ValidationError("model path not found: " + model_path.string());
    ColoredPointCloud model_cloud = ply_read(model_path);
    model_cloud.frame = Frame::object;
    ObjectModel model(std::move(model_cloud), symmetric, diameter);

    auto load_frame = [](const std::string& id, const fs::path& visible, const fs::path& init,
                         const std::optional<fs::path>& gt, const std::optional<fs::path>& kps, const fs::path& dir) {
        FrameInput f;
        f.id = id;
        f.visible = ply_read(visible);
        f.visible.frame = Frame::camera;
        f.init_pose = io::pose_from_json(io::read_json(init));
        if (gt) f.gt_pose = io::pose_from_json(io::read_json(*gt));
        if (kps) f.keypoints = io::keypoints_from_json(io::read_json(*kps));
        f.dir = dir;
        return f;
    };

    std::vector<FrameInput> frames;
    if (config.dataset) {
        std::vector<fs::path> dirs;
        for (const auto& entry : fs::directory_iterator(*config.dataset)) {
            if (entry.is_directory() && entry.path().filename().string().starts_with("frame_")) dirs.push_back(entry.path());
        }
        std::sort(dirs.begin(), dirs.end());
        if (dirs.empty()) throw ValidationError("dataset has no frame_* directories: " + config.dataset->string());
        for (const auto& d : dirs) {
            for (const char* required : {"visible.ply", "init_pose.json"}) {
                if (!fs::exists(d / required)) throw ValidationError("missing " + (d / required).string());
            }
            const std::optional<fs::path> gt = fs::exists(d / "gt_pose.json") ? std::optional(d / "gt_pose.json") : std::nullopt;
            const std::optional<fs::path> kp =
                fs::exists(d / "keypoints.json") ? std::optional(d / "keypoints.json") : std::nullopt;
            frames.push_back(load_frame(d.filename().string(), d / "visible.ply", d / "init_pose.json", gt, kp, d));
        }
    } else {
        frames.push_back(load_frame("frame_000000", *config.visible, *config.init_pose, config.gt_pose, config.keypoints,
                                    {}));
    }
    return {std::move(model), std::move(frames)};
}

ReportFragment run_refine(const RunConfig& config, const LoadedRun& inputs, std::size_t jobs) {
    const auto start = std::chrono::steady_clock::now();
    const ObjectModel& model = inputs.model;
    const std::size_t n = inputs.frames.size();
    const KeypointSet default_keypoints = farthest_point_sampling(model.cloud(), config.keypoint_count);

    std::vector<FrameRow> rows(n);
    std::vector<std::exception_ptr> errors(n);
    const int threads = static_cast<int>(std::max<std::size_t>(1, jobs));

#pragma omp parallel for num_threads(threads) schedule(dynamic)
    for (std::ptrdiff_t fi = 0; fi < static_cast<std::ptrdiff_t>(n); ++fi) {
        try {
            const FrameInput& frame = inputs.frames[fi];
            const auto provider = make_provider(completion_for_frame(config.completion, frame));
            const ColoredPointCloud target = build_target(frame.visible, frame.init_pose, *provider);
            CikpConfig cfg = config.cikp;
            cfg.rng_seed = mix_seed(config.cikp.rng_seed, static_cast<std::uint64_t>(fi));
            const RefineReport rep =
                refine(model.cloud(), target, frame.keypoints ? *frame.keypoints : default_keypoints, frame.init_pose, cfg);

            FrameRow row;
            row.frame = frame.id;
            row.object = config.synthetic ? synthetic::shape_name(config.synthetic->shape) : config.object;
            row.iterations = rep.iterations_run;
            row.converged = rep.converged;
            row.reason = to_string(rep.reason);
            row.refined_pose = rep.final_pose;
            if (frame.gt_pose) {
                row.add_init = add_metric(model, frame.init_pose, *frame.gt_pose);
                row.add_refined = add_metric(model, rep.final_pose, *frame.gt_pose);
                row.adds_init = add_s_metric(model, frame.init_pose, *frame.gt_pose);
                row.adds_refined = add_s_metric(model, rep.final_pose, *frame.gt_pose);
            }
            rows[fi] = std::move(row);
        } catch (...) {
            errors[fi] = std::current_exception();
        }
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }

    ReportFragment frag;
    frag.object = config.synthetic ? synthetic::shape_name(config.synthetic->shape) : config.object;
    frag.symmetric = model.symmetric();
    frag.diameter = model.diameter();
    frag.rows = std::move(rows);
    std::sort(frag.rows.begin(), frag.rows.end(), [](const FrameRow& a, const FrameRow& b) { return a.frame < b.frame; });
    frag.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return frag;
}

ReportFragment cmd_refine(const RunConfig& config, std::size_t jobs, const fs::path& output_dir) {
    const LoadedRun inputs = load_inputs(config);
    ReportFragment frag = run_refine(config, inputs, jobs);
    fs::create_directories(output_dir);
    for (const auto& row : frag.rows) {
        fs::create_directories(output_dir / row.frame);
        io::write_json(io::pose_to_json(row.refined_pose), output_dir / row.frame / "refined_pose.json");
    }
    io::write_json(fragment_to_json(frag), output_dir / "report.json");
    io::write_text(rows_to_csv(frag.rows), output_dir / "report.csv");
    return frag;
}

Json fragment_to_json(const ReportFragment& f) {
    Json rows = Json::array();
    for (const auto& r : f.rows) {
        rows.push_back({{"frame", r.frame},
                        {"object", r.object},
                        {"add_init", optional_number(r.add_init)},
                        {"add_refined", optional_number(r.add_refined)},
                        {"adds_init", optional_number(r.adds_init)},
                        {"adds_refined", optional_number(r.adds_refined)},
                        {"iterations", r.iterations},
                        {"converged", r.converged},
                        {"reason", r.reason},
                        {"refined_pose", io::pose_to_json(r.refined_pose)}});
    }
    return Json{{"object", f.object},
                {"symmetric", f.symmetric},
                {"diameter", f.diameter},
                {"rows", rows},
                {"timing", timing_json(f.wall_time_s)}};
}

ReportFragment fragment_from_json(const Json& j) {
    ReportFragment f;
    try {
        f.object = j.at("object").get<std::string>();
        f.symmetric = j.at("symmetric").get<bool>();
        f.diameter = j.at("diameter").get<double>();
        if (j.contains("timing") && j.at("timing").contains("wall_time_s")) {
            f.wall_time_s = j.at("timing").at("wall_time_s").get<double>();
        }
        for (const auto& r : j.at("rows")) {
            FrameRow row;
            row.frame = r.at("frame").get<std::string>();
            row.object = r.value("object", f.object);
            row.add_init = number_or_null(r, "add_init");
            row.add_refined = number_or_null(r, "add_refined");
            row.adds_init = number_or_null(r, "adds_init");
            row.adds_refined = number_or_null(r, "adds_refined");
            row.iterations = r.value("iterations", std::size_t{0});
            row.converged = r.value("converged", false);
            row.reason = r.value("reason", std::string());
            if (r.contains("refined_pose")) row.refined_pose = io::pose_from_json(r.at("refined_pose"));
            f.rows.push_back(std::move(row));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("malformed report fragment: ") + e.what());
    }
    return f;
}

std::string rows_to_csv(const std::vector<FrameRow>& rows) {
    std::string out = std::string(kCsvHeader) + "\n";
    auto cell = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string(); };
    for (const auto& r : rows) {
        out += r.frame + "," + r.object + "," + cell(r.add_init) + "," + cell(r.add_refined) + "," + cell(r.adds_init) +
               "," + cell(r.adds_refined) + "\n";
    }
    return out;
}

namespace {

Summary summarize(const std::vector<const FrameRow*>& rows, const std::map<std::string, std::pair<bool, double>>& meta) {
    Summary s;
    s.frames = rows.size();
    if (rows.empty()) return s;
    std::vector<double> adds, adds_init, add_s, add_s_init;
    std::size_t hits = 0, hits_init = 0;
    double iters = 0.0;
    for (const FrameRow* r : rows) {
        const auto& [symmetric, diameter] = meta.at(r->object);
        adds.push_back(*r->adds_refined);
        adds_init.push_back(*r->adds_init);
        const double refined = symmetric ? *r->adds_refined : *r->add_refined;
        const double initial = symmetric ? *r->adds_init : *r->add_init;
        add_s.push_back(refined);
        add_s_init.push_back(initial);
        hits += refined < kDiameterFraction * diameter ? 1 : 0;
        hits_init += initial < kDiameterFraction * diameter ? 1 : 0;
        iters += static_cast<double>(r->iterations);
    }
    s.adds_auc = add_auc(adds, kAucCap);
    s.adds_auc_init = add_auc(adds_init, kAucCap);
    s.add_s_auc = add_auc(add_s, kAucCap);
    s.add_s_auc_init = add_auc(add_s_init, kAucCap);
    s.add_s_01 = static_cast<double>(hits) / static_cast<double>(rows.size());
    s.add_s_01_init = static_cast<double>(hits_init) / static_cast<double>(rows.size());
    s.mean_iterations = iters / static_cast<double>(rows.size());
    return s;
}

Json summary_json(const Summary& s) {
    return Json{{"frames", s.frames},
                {"adds_auc", s.adds_auc},
                {"adds_auc_init", s.adds_auc_init},
                {"add_s_auc", s.add_s_auc},
                {"add_s_auc_init", s.add_s_auc_init},
                {"add_s_01", s.add_s_01},
                {"add_s_01_init", s.add_s_01_init},
                {"mean_iterations", s.mean_iterations}};
}

}  // namespace

EvalReport evaluate(const std::vector<ReportFragment>& fragments) {
    if (fragments.empty()) throw ValidationError("evaluate needs at least one report fragment");
    std::map<std::string, std::pair<bool, double>> meta;
    EvalReport report;
    for (const auto& f : fragments) {
        const auto [it, inserted] = meta.emplace(f.object, std::make_pair(f.symmetric, f.diameter));
        if (!inserted && (it->second.first != f.symmetric || it->second.second != f.diameter)) {
            throw ValidationError("inconsistent metadata for object '" + f.object + "' across report fragments");
        }
        if (!(f.diameter > 0.0)) throw ValidationError("object '" + f.object + "' has non-positive diameter");
        for (const auto& r : f.rows) {
            if (r.object != f.object) throw ValidationError("row object '" + r.object + "' differs from fragment object");
            if (!r.add_init || !r.add_refined || !r.adds_init || !r.adds_refined) {
                throw ValidationError("frame '" + r.frame + "' has no ground-truth metrics");
            }
            report.rows.push_back(r);
        }
        report.wall_time_s += f.wall_time_s;
    }
    if (report.rows.empty()) throw ValidationError("report fragments contain no frames");
    std::sort(report.rows.begin(), report.rows.end(), [](const FrameRow& a, const FrameRow& b) {
        return a.object != b.object ? a.object < b.object : a.frame < b.frame;
    });

    std::vector<const FrameRow*> all;
    for (const auto& r : report.rows) all.push_back(&r);
    report.overall = summarize(all, meta);
    for (const auto& [object, m] : meta) {
        std::vector<const FrameRow*> sub;
        for (const auto& r : report.rows) {
            if (r.object == object) sub.push_back(&r);
        }
        report.objects.push_back({object, m.first, m.second, summarize(sub, meta)});
    }
    return report;
}

Json eval_to_json(const EvalReport& report) {
    Json objects = Json::array();
    for (const auto& o : report.objects) {
        Json j = summary_json(o.summary);
        j["object"] = o.object;
        j["symmetric"] = o.symmetric;
        j["diameter"] = o.diameter;
        objects.push_back(std::move(j));
    }
    Json rows = Json::array();
    for (const auto& r : report.rows) {
        rows.push_back({{"frame", r.frame},
                        {"object", r.object},
                        {"add_init", *r.add_init},
                        {"add_refined", *r.add_refined},
                        {"adds_init", *r.adds_init},
                        {"adds_refined", *r.adds_refined},
                        {"iterations", r.iterations}});
    }
    return Json{{"auc_cap_m", kAucCap},
                {"diameter_fraction", kDiameterFraction},
                {"overall", summary_json(report.overall)},
                {"objects", objects},
                {"rows", rows},
                {"timing", timing_json(report.wall_time_s)}};
}

EvalReport cmd_evaluate(const std::vector<fs::path>& report_paths, const fs::path& output_dir) {
    std::vector<ReportFragment> fragments;
    for (const auto& p : report_paths) {
        if (!fs::exists(p)) throw ValidationError("report not found: " + p.string());
        fragments.push_back(fragment_from_json(io::read_json(p)));
    }
    EvalReport report = evaluate(fragments);
    fs::create_directories(output_dir);
    io::write_json(eval_to_json(report), output_dir / "evaluation.json");
    io::write_text(rows_to_csv(report.rows), output_dir / "evaluation.csv");
    return report;
}

void cmd_synth(const synthetic::SceneSpec& spec, std::size_t count, const fs::path& output_dir) {
    if (count == 0) throw ValidationError("synth: count must be positive");
    spec.validate();
    const synthetic::SampledShape shape = synthetic::sample_shape(spec);
    fs::create_directories(output_dir);
    ply_write(shape.model.cloud(), output_dir / "model.ply", PlyFormat::binary_le);
    io::write_json(Json{{"object", synthetic::shape_name(spec.shape)},
                        {"symmetric", shape.model.symmetric()},
                        {"diameter", shape.model.diameter()},
                        {"count", count},
                        {"spec", io::scene_spec_to_json(spec)}},
                   output_dir / "dataset.json");
    for (std::size_t i = 0; i < count; ++i) {
        const auto scene = synthetic::generate_scene(spec, shape, i);
        const fs::path dir = output_dir / frame_name(i);
        fs::create_directories(dir);
        ply_write(scene.visible_cam, dir / "visible.ply", PlyFormat::binary_le);
        io::write_json(io::pose_to_json(scene.gt_pose), dir / "gt_pose.json");
        io::write_json(io::pose_to_json(scene.init_pose), dir / "init_pose.json");
        io::write_json(io::keypoints_to_json(scene.keypoints), dir / "keypoints.json");
    }
}

AblationConfig ablation_config_from_json(const Json& j, const fs::path& base_dir) {
    if (!j.is_object()) throw ValidationError("ablation config must be a JSON object");
    Json base = j;
    AblationConfig c;
    for (const char* key : {"color", "mode", "completions"}) base.erase(key);
    c.base = run_config_from_json(base, base_dir);
    try {
        if (j.contains("color")) c.color = j.at("color").get<std::vector<bool>>();
        if (j.contains("mode")) {
            c.modes.clear();
            for (const auto& m : j.at("mode")) {
                if (m == "per_keypoint") {
                    c.modes.push_back(RegistrationMode::per_keypoint);
                } else if (m == "global") {
                    c.modes.push_back(RegistrationMode::global);
                } else {
                    throw ValidationError("unknown registration mode " + m.dump());
                }
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("ablation config: ") + e.what());
    }
    if (j.contains("completions")) {
        c.completions.clear();
        for (const auto& k : j.at("completions")) c.completions.push_back(io::completion_from_json(k, base_dir));
    }
    if (c.color.empty() || c.modes.empty() || c.completions.empty()) {
        throw ValidationError("ablation matrix has an empty axis");
    }
    return c;
}

AblationConfig load_ablation_config(const fs::path& path) {
    if (!fs::exists(path)) throw ValidationError("config file not found: " + path.string());
    return ablation_config_from_json(io::read_json(path), path.parent_path());
}

std::vector<AblationRow> run_ablation(const AblationConfig& config, std::size_t jobs) {
    const LoadedRun inputs = load_inputs(config.base);
    std::vector<AblationRow> table;
    for (const bool color : config.color) {
        for (const RegistrationMode mode : config.modes) {
            for (const CompletionKind& completion : config.completions) {
                RunConfig rc = config.base;
                rc.cikp.use_color = color;
                rc.cikp.mode = mode;
                rc.completion = completion;
                const EvalReport eval = evaluate({run_refine(rc, inputs, jobs)});

                AblationRow row;
                row.color = color;
                row.mode = mode;
                row.completion = kind_name(completion);
                row.variant = std::string(color ? "color" : "nocolor") + "+" + mode_name(mode) + "+" + row.completion;
                row.frames = eval.overall.frames;
                row.add_s_01 = eval.overall.add_s_01;
                row.add_s_auc = eval.overall.add_s_auc;
                row.mean_iterations = eval.overall.mean_iterations;
                double sum = 0.0;
                for (const auto& r : eval.rows) sum += inputs.model.symmetric() ? *r.adds_refined : *r.add_refined;
                row.mean_add_s = sum / static_cast<double>(eval.rows.size());
                table.push_back(std::move(row));
            }
        }
    }
    return table;
}

std::vector<AblationRow> cmd_ablate(const AblationConfig& config, std::size_t jobs, const fs::path& output_dir) {
    const auto start = std::chrono::steady_clock::now();
    auto table = run_ablation(config, jobs);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    fs::create_directories(output_dir);
    Json rows = Json::array();
    std::string csv = "variant,color,registration,completion,frames,add_s_01,add_s_auc,mean_add_s,mean_iterations\n";
    for (const auto& r : table) {
        rows.push_back({{"variant", r.variant},
                        {"color", r.color},
                        {"registration", mode_name(r.mode)},
                        {"completion", r.completion},
                        {"frames", r.frames},
                        {"add_s_01", r.add_s_01},
                        {"add_s_auc", r.add_s_auc},
                        {"mean_add_s", r.mean_add_s},
                        {"mean_iterations", r.mean_iterations}});
        csv += r.variant + "," + (r.color ? "on" : "off") + "," + mode_name(r.mode) + "," + r.completion + "," +
               std::to_string(r.frames) + "," + format_number(r.add_s_01) + "," + format_number(r.add_s_auc) + "," +
               format_number(r.mean_add_s) + "," + format_number(r.mean_iterations) + "\n";
    }
    io::write_json(Json{{"rows", rows}, {"timing", timing_json(wall)}}, output_dir / "ablation.json");
    io::write_text(csv, output_dir / "ablation.csv");
    return table;
}

}  // namespace krf::cli
