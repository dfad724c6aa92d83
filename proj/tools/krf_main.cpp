#include "krf/commands.hpp"
#include "krf/error.hpp"
#include "krf/json_io.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace fs = std::filesystem;

int main(int argc, char** argv) {
    CLI::App app{"krf: colored keypoint refinement of 6D object poses"};
    app.require_subcommand(1);

    std::string config_path;
    std::string output_dir = "krf_out";
    std::optional<std::uint64_t> seed;
    std::size_t jobs = 1;
    std::optional<std::size_t> count;
    std::vector<std::string> reports;

    auto add_common = [&](CLI::App* cmd, bool needs_config) {
        auto* opt = cmd->add_option("--config", config_path, "JSON configuration file");
        if (needs_config) opt->required();
        cmd->add_option("--output", output_dir, "Output directory");
        cmd->add_option("--seed", seed, "Random seed (overrides the config)");
        cmd->add_option("--jobs", jobs, "Frames refined in parallel")->check(CLI::PositiveNumber);
    };

    auto* refine = app.add_subcommand("refine", "Refine initial poses and write a report fragment");
    add_common(refine, true);
    auto* evaluate = app.add_subcommand("evaluate", "Aggregate report fragments into AUC and ADD(S)-0.1");
    add_common(evaluate, false);
    evaluate->add_option("reports", reports, "report.json fragments")->required();
    auto* synth = app.add_subcommand("synth", "Generate a synthetic dataset");
    add_common(synth, true);
    synth->add_option("--count", count, "Number of frames");
    auto* ablate = app.add_subcommand("ablate", "Run the color / registration / completion ablation matrix");
    add_common(ablate, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : static_cast<int>(krf::ExitCode::usage);
    }

    try {
        if (*refine) {
            auto config = krf::cli::load_run_config(config_path);
            if (seed) config.cikp.rng_seed = *seed;
            const auto frag = krf::cli::cmd_refine(config, jobs, output_dir);
            std::cout << "refined " << frag.rows.size() << " frame(s) -> " << (fs::path(output_dir) / "report.json").string()
                      << '\n';
        } else if (*evaluate) {
            std::vector<fs::path> paths(reports.begin(), reports.end());
            const auto report = krf::cli::cmd_evaluate(paths, output_dir);
            std::cout << "frames " << report.overall.frames << "  ADD-S AUC " << report.overall.adds_auc << "  ADD(S) AUC "
                      << report.overall.add_s_auc << "  ADD(S)-0.1 " << report.overall.add_s_01 << '\n';
        } else if (*synth) {
            if (!fs::exists(config_path)) throw krf::ValidationError("config file not found: " + config_path);
            const auto json = krf::io::read_json(config_path);
            auto spec = krf::io::scene_spec_from_json(json);
            if (seed) spec.rng_seed = *seed;
            // --count wins over a "count" key in the spec file.
            const std::size_t frames = count ? *count : json.value("count", std::size_t{1});
            if (frames == 0) throw krf::ValidationError("count must be positive");
            krf::cli::cmd_synth(spec, frames, output_dir);
            std::cout << "wrote " << frames << " frame(s) to " << output_dir << '\n';
        } else if (*ablate) {
            auto config = krf::cli::load_ablation_config(config_path);
            if (seed) config.base.cikp.rng_seed = *seed;
            const auto rows = krf::cli::cmd_ablate(config, jobs, output_dir);
            for (const auto& r : rows) {
                std::cout << r.variant << "  ADD(S)-0.1 " << r.add_s_01 << "  AUC " << r.add_s_auc << '\n';
            }
        }
    } catch (const krf::Error& e) {
        std::cerr << "krf: error: " << e.what() << '\n';
        return static_cast<int>(e.exit_code());
    } catch (const std::exception& e) {
        std::cerr << "krf: error: " << e.what() << '\n';
        return static_cast<int>(krf::ExitCode::data);
    }
    return 0;
}
