#include "minos/experiment.hpp"

#include <filesystem>
#include <fstream>

#include "minos/errors.hpp"

namespace minos {

namespace {

void write_file(const std::filesystem::path& path, const std::string& content,
                std::vector<std::string>& written) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write output file: " + path.string());
    out << content;
    written.push_back(path.string());
}

CostSeries pool_series(const std::vector<RunSummary>& summaries) {
    CostSeries out = summaries.front().series;
    for (std::size_t k = 1; k < summaries.size(); ++k)
        for (std::size_t i = 0; i < out.size(); ++i) {
            out.cumulative_cost[i] += summaries[k].series.cumulative_cost[i];
            out.cumulative_successes[i] += summaries[k].series.cumulative_successes[i];
        }
    return out;
}

ExperimentOutcome run_all(const ExperimentConfig& cfg, bool write_files) {
    namespace fs = std::filesystem;
    fs::path dir(cfg.output_dir);
    if (write_files) {
        std::error_code ec;
        fs::create_directories(dir, ec);
        if (ec) throw ConfigError("cannot create output directory: " + dir.string());
    }

    ExperimentOutcome outcome;
    std::vector<RunSummary> baselines, treatments;
    std::vector<ComparisonReport> rows;

    for (std::uint64_t seed : cfg.seeds) {
        ElysiumThreshold threshold =
            cfg.policy.enabled ? resolve_threshold(cfg, seed) : ElysiumThreshold::pass_all();
        RunResult minos_run = run_arm(cfg, seed, "minos", threshold);
        RunResult baseline_run = run_arm(cfg, seed, "baseline", ElysiumThreshold::pass_all());

        SeedOutcome so{seed,
                       summarize_run(cfg, seed, "minos", minos_run, threshold),
                       summarize_run(cfg, seed, "baseline", baseline_run,
                                     ElysiumThreshold::pass_all()),
                       {}};

        auto check = [&](const RunResult& run, const RunSummary& summary) {
            auto problems = verify_run(run.trace, summary);
            if (!problems.empty())
                throw InvariantViolation("verification failed for seed " +
                                         std::to_string(seed) + " (" + summary.mode +
                                         "): " + problems.front());
        };
        check(minos_run, so.minos);
        check(baseline_run, so.baseline);
        so.comparison = compare(so.baseline, so.minos);

        if (write_files) {
            std::string tag = "_seed" + std::to_string(seed);
            write_file(dir / ("trace_minos" + tag + ".csv"), trace_to_csv(minos_run.trace),
                       outcome.files_written);
            write_file(dir / ("trace_baseline" + tag + ".csv"),
                       trace_to_csv(baseline_run.trace), outcome.files_written);
            write_file(dir / ("summary_minos" + tag + ".json"),
                       summary_to_json(so.minos).dump(2) + "\n", outcome.files_written);
            write_file(dir / ("summary_baseline" + tag + ".json"),
                       summary_to_json(so.baseline).dump(2) + "\n", outcome.files_written);
        }

        rows.push_back(so.comparison);
        baselines.push_back(so.baseline);
        treatments.push_back(so.minos);
        outcome.per_seed.push_back(std::move(so));
    }

    outcome.aggregate = compare_pooled(baselines, treatments);
    if (write_files) {
        rows.push_back(outcome.aggregate);
        write_file(dir / "comparison.csv", comparison_to_csv(rows), outcome.files_written);
        write_file(dir / "timeseries.csv",
                   timeseries_to_csv(pool_series(baselines), pool_series(treatments)),
                   outcome.files_written);
    }
    return outcome;
}

}  // namespace

RunResult run_arm(const ExperimentConfig& cfg, std::uint64_t seed, const std::string& mode,
                  const ElysiumThreshold& threshold) {
    RunSpec spec;
    spec.vu_count = cfg.workload.vu_count;
    spec.duration_ms = cfg.workload.duration_ms;
    spec.threshold = threshold;
    spec.mode = (mode == "minos" && cfg.policy.enabled) ? PolicyMode::Active
                                                        : PolicyMode::Disabled;
    return run_simulation(cfg, seed, spec);
}

RunSummary summarize_run(const ExperimentConfig& cfg, std::uint64_t seed,
                         const std::string& mode, const RunResult& result,
                         const ElysiumThreshold& threshold) {
    SummarizeInputs in;
    in.mode = mode;
    in.seed = seed;
    in.duration_ms = cfg.workload.duration_ms;
    in.cost_params = cfg.cost.to_params();
    in.retry_cap = cfg.policy.retry_cap;
    in.threshold_value = threshold.value;
    in.target_pass_fraction = threshold.target_pass_fraction;
    // Echo only the simulation-relevant subtrees; the seed is its own field
    // and the output path has no bearing on the run.
    in.config_echo = config_to_json(cfg);
    in.config_echo.erase("seeds");
    in.config_echo.erase("output_dir");
    return summarize(result.trace, in);
}

ExperimentOutcome run_experiment(const ExperimentConfig& cfg) { return run_all(cfg, false); }

ExperimentOutcome run_experiment_to_files(const ExperimentConfig& cfg) {
    return run_all(cfg, true);
}

}  // namespace minos
