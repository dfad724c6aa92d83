#pragma once

// Library side of the `krf` command-line tool: configuration loading,
// dataset layout, report formats and the refine / evaluate / synth /
// ablate workflows.
//
// Dataset layout written by synth and read by refine/ablate:
//
//   <dir>/dataset.json           object id, symmetric flag, diameter, scene spec
//   <dir>/model.ply              colored object-frame model
//   <dir>/frame_000000/visible.ply
//   <dir>/frame_000000/gt_pose.json
//   <dir>/frame_000000/init_pose.json
//   <dir>/frame_000000/keypoints.json
//   ...

#include "krf/cikp.hpp"
#include "krf/completion.hpp"
#include "krf/json_io.hpp"
#include "krf/metrics.hpp"
#include "krf/synthetic.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace krf::cli {

inline constexpr double kAucCap = 0.1;
inline constexpr double kDiameterFraction = 0.1;
inline constexpr const char* kCsvHeader = "frame,object,add_init,add_refined,adds_init,adds_refined";

struct RunConfig {
    std::string object = "object";
    bool symmetric = false;
    std::optional<double> diameter;
    std::size_t keypoint_count = 8;
    CikpConfig cikp;
    CompletionKind completion = NullKind{};

    std::optional<std::filesystem::path> model;
    std::optional<std::filesystem::path> dataset;
    // Single-frame input.
    std::optional<std::filesystem::path> visible;
    std::optional<std::filesystem::path> init_pose;
    std::optional<std::filesystem::path> gt_pose;
    std::optional<std::filesystem::path> keypoints;
    // In-memory synthetic frames.
    std::optional<synthetic::SceneSpec> synthetic;
    std::size_t synthetic_count = 1;
};

/// Parses a run configuration. Relative paths resolve against `base_dir`;
/// referenced files must exist (ValidationError naming the path otherwise).
RunConfig run_config_from_json(const io::Json& j, const std::filesystem::path& base_dir);
RunConfig load_run_config(const std::filesystem::path& path);

struct FrameInput {
    std::string id;
    ColoredPointCloud visible;
    PoseSE3 init_pose;
    std::optional<PoseSE3> gt_pose;
    std::optional<KeypointSet> keypoints;
    std::filesystem::path dir;
};

struct LoadedRun {
    ObjectModel model;
    std::vector<FrameInput> frames;
};

LoadedRun load_inputs(const RunConfig& config);

struct FrameRow {
    std::string frame;
    std::string object;
    std::optional<double> add_init;
    std::optional<double> add_refined;
    std::optional<double> adds_init;
    std::optional<double> adds_refined;
    std::size_t iterations = 0;
    bool converged = false;
    std::string reason;
    PoseSE3 refined_pose;
};

struct ReportFragment {
    std::string object;
    bool symmetric = false;
    double diameter = 0.0;
    std::vector<FrameRow> rows;
    double wall_time_s = 0.0;
};

/// Refines every frame (up to `jobs` in parallel). Rows come back in frame order.
ReportFragment run_refine(const RunConfig& config, const LoadedRun& inputs, std::size_t jobs);

/// run_refine plus output files: <out>/<frame>/refined_pose.json,
/// <out>/report.json and <out>/report.csv.
ReportFragment cmd_refine(const RunConfig& config, std::size_t jobs, const std::filesystem::path& output_dir);

io::Json fragment_to_json(const ReportFragment& fragment);
ReportFragment fragment_from_json(const io::Json& j);
std::string rows_to_csv(const std::vector<FrameRow>& rows);

struct Summary {
    std::size_t frames = 0;
    double adds_auc = 0.0;        // ADD-S AUC, refined
    double add_s_auc = 0.0;       // ADD(S) AUC, refined
    double adds_auc_init = 0.0;
    double add_s_auc_init = 0.0;
    double add_s_01 = 0.0;        // ADD(S)-0.1 accuracy, refined
    double add_s_01_init = 0.0;
    double mean_iterations = 0.0;
};

struct ObjectSummary {
    std::string object;
    bool symmetric = false;
    double diameter = 0.0;
    Summary summary;
};

struct EvalReport {
    std::vector<FrameRow> rows;
    std::vector<ObjectSummary> objects;
    Summary overall;
    double wall_time_s = 0.0;
};

/// Aggregates fragments; rejects conflicting object metadata and rows without ground truth.
EvalReport evaluate(const std::vector<ReportFragment>& fragments);
io::Json eval_to_json(const EvalReport& report);
/// Writes <out>/evaluation.json and <out>/evaluation.csv.
EvalReport cmd_evaluate(const std::vector<std::filesystem::path>& report_paths, const std::filesystem::path& output_dir);

/// Writes the dataset layout above with `count` frames.
void cmd_synth(const synthetic::SceneSpec& spec, std::size_t count, const std::filesystem::path& output_dir);

struct AblationConfig {
    RunConfig base;
    std::vector<bool> color{true, false};
    std::vector<RegistrationMode> modes{RegistrationMode::per_keypoint, RegistrationMode::global};
    std::vector<CompletionKind> completions{NullKind{}, MirrorKind{}};
};

AblationConfig ablation_config_from_json(const io::Json& j, const std::filesystem::path& base_dir);
AblationConfig load_ablation_config(const std::filesystem::path& path);

struct AblationRow {
    std::string variant;
    bool color = true;
    RegistrationMode mode = RegistrationMode::per_keypoint;
    std::string completion;
    std::size_t frames = 0;
    double add_s_01 = 0.0;
    double add_s_auc = 0.0;
    double mean_add_s = 0.0;
    double mean_iterations = 0.0;
};

std::vector<AblationRow> run_ablation(const AblationConfig& config, std::size_t jobs);
/// Writes <out>/ablation.json and <out>/ablation.csv, one row per variant.
std::vector<AblationRow> cmd_ablate(const AblationConfig& config, std::size_t jobs, const std::filesystem::path& output_dir);

std::string format_number(double v);

}  // namespace krf::cli
