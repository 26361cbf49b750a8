// Experiment driver: paired baseline/minos simulation runs, pre-test
// calibration, and post-hoc verification of written traces.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "minos/config.hpp"
#include "minos/errors.hpp"
#include "minos/experiment.hpp"
#include "minos/json.hpp"
#include "minos/reporting.hpp"
#include "minos/simulation.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 1;
constexpr int kExitInvariantViolation = 2;

struct CommonOpts {
    std::optional<std::string> config_path;
    std::vector<std::string> overrides;
    std::optional<std::string> out_dir;
    std::vector<std::uint64_t> seeds;
    bool policy_disabled = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("-c,--config", opts.config_path, "JSON config file (defaults embedded)");
    cmd->add_option("-s,--set", opts.overrides,
                    "Override a config key, e.g. --set workload.vu_count=20");
    cmd->add_option("-o,--out", opts.out_dir, "Output directory (overrides config and env)");
    cmd->add_option("--seed,--seeds", opts.seeds, "Seed list override");
    cmd->add_flag("--policy-disabled", opts.policy_disabled,
                  "Disable the selection policy in the treatment arm too");
}

minos::ExperimentConfig build_config(const CommonOpts& opts) {
    auto cfg = minos::load_config(opts.config_path, opts.overrides);
    if (!opts.seeds.empty()) cfg.seeds = opts.seeds;
    if (const char* env = std::getenv("MINOS_OUT_DIR")) cfg.output_dir = env;
    if (opts.out_dir) cfg.output_dir = *opts.out_dir;
    if (opts.policy_disabled) cfg.policy.enabled = false;
    auto errors = minos::validate_config(cfg);
    if (!errors.empty()) {
        std::ostringstream msg;
        msg << "invalid configuration:";
        for (const auto& e : errors) msg << "\n  - " << e;
        throw minos::ConfigError(msg.str());
    }
    return cfg;
}

int cmd_run(const CommonOpts& opts) {
    auto cfg = build_config(opts);
    auto outcome = minos::run_experiment_to_files(cfg);
    for (const auto& so : outcome.per_seed) {
        std::cout << "seed " << so.seed << ": minos " << so.minos.successful_requests
                  << " ok, baseline " << so.baseline.successful_requests
                  << " ok, compute speedup "
                  << minos::format_double(so.comparison.compute_speedup_pct)
                  << "%, cost delta "
                  << minos::format_double(so.comparison.cost_delta_pct) << "%\n";
    }
    std::cout << "aggregate: compute speedup "
              << minos::format_double(outcome.aggregate.compute_speedup_pct)
              << "%, success delta "
              << minos::format_double(outcome.aggregate.success_delta_pct)
              << "%, cost delta " << minos::format_double(outcome.aggregate.cost_delta_pct)
              << "%, cheaper fraction "
              << minos::format_double(outcome.aggregate.fraction_of_time_cheaper) << "\n";
    std::cout << outcome.files_written.size() << " files written to " << cfg.output_dir
              << "\n";
    return kExitOk;
}

int cmd_pretest(const CommonOpts& opts) {
    auto cfg = build_config(opts);
    namespace fs = std::filesystem;
    fs::create_directories(cfg.output_dir);
    for (std::uint64_t seed : cfg.seeds) {
        auto scores = minos::run_pretest_scores(cfg, seed);
        if (scores.empty())
            throw minos::ConfigError(
                "workload.pretest_duration_ms: pre-test collected zero benchmark scores");
        auto threshold = minos::calibrate_pretest(scores, cfg.policy.target_pass_fraction);
        fs::path path = fs::path(cfg.output_dir) /
                        ("pretest_scores_seed" + std::to_string(seed) + ".csv");
        std::ofstream out(path, std::ios::binary);
        out << "score_ms\n";
        for (double s : scores) out << minos::format_double(s) << "\n";
        std::cout << "seed " << seed << ": " << scores.size()
                  << " benchmark scores, elysium threshold "
                  << minos::format_double(threshold.value) << " ms (pass fraction "
                  << minos::format_double(threshold.target_pass_fraction) << ") -> "
                  << path.string() << "\n";
    }
    return kExitOk;
}

int cmd_print_default_config() {
    std::cout << minos::config_to_json(minos::default_config()).dump(2) << "\n";
    return kExitOk;
}

int cmd_verify(const std::string& dir) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) throw minos::ConfigError("not a directory: " + dir);

    std::vector<std::string> summary_files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        auto name = entry.path().filename().string();
        if (name.rfind("summary_", 0) == 0 && entry.path().extension() == ".json")
            summary_files.push_back(entry.path().string());
    }
    std::sort(summary_files.begin(), summary_files.end());
    if (summary_files.empty())
        throw minos::ConfigError("no summary_*.json files found in " + dir);

    bool all_clean = true;
    for (const auto& summary_path : summary_files) {
        std::ifstream sin(summary_path);
        auto summary = minos::summary_from_json(nlohmann::json::parse(sin));
        std::string trace_path = summary_path;
        trace_path.replace(trace_path.find("summary_"), 8, "trace_");
        trace_path.replace(trace_path.rfind(".json"), 5, ".csv");
        std::ifstream tin(trace_path);
        if (!tin) throw minos::ConfigError("missing trace file: " + trace_path);
        std::stringstream buf;
        buf << tin.rdbuf();
        auto trace = minos::trace_from_csv(buf.str());

        auto problems = minos::verify_run(trace, summary);
        if (problems.empty()) {
            std::cout << "[ok] " << summary_path << " (" << trace.size() << " attempts)\n";
        } else {
            all_clean = false;
            std::cout << "[violation] " << summary_path << "\n";
            for (const auto& p : problems) std::cout << "    " << p << "\n";
        }
    }
    if (!all_clean) throw minos::InvariantViolation("trace verification failed");
    std::cout << summary_files.size() << " runs verified\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discrete-event FaaS platform simulator with benchmark-gated "
                 "instance selection"};
    app.require_subcommand(1);

    CommonOpts run_opts, pretest_opts;
    auto* run = app.add_subcommand("run", "Run paired baseline/minos experiments");
    add_common(run, run_opts);
    auto* pretest = app.add_subcommand("pretest", "Run pre-test calibration only");
    add_common(pretest, pretest_opts);
    app.add_subcommand("print-default-config", "Dump the embedded default config");
    auto* verify = app.add_subcommand("verify", "Re-check invariants over written traces");
    std::string verify_dir;
    verify->add_option("dir", verify_dir, "Experiment output directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(run_opts);
        if (pretest->parsed()) return cmd_pretest(pretest_opts);
        if (verify->parsed()) return cmd_verify(verify_dir);
        return cmd_print_default_config();
    } catch (const minos::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const minos::InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return kExitInvariantViolation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvariantViolation;
    }
}
