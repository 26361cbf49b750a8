#pragma once

#include <string>
#include <vector>

#include "minos/config.hpp"
#include "minos/reporting.hpp"
#include "minos/simulation.hpp"

namespace minos {

struct SeedOutcome {
    std::uint64_t seed;
    RunSummary minos;
    RunSummary baseline;
    ComparisonReport comparison;
};

struct ExperimentOutcome {
    std::vector<SeedOutcome> per_seed;
    ComparisonReport aggregate;  // pooled across seeds
    std::vector<std::string> files_written;
};

// One paired run per seed: pre-test calibration (when configured), the
// treatment arm, then the baseline arm on the identical seed. Summaries are
// verified against the independent oracle pass before anything is written.
ExperimentOutcome run_experiment(const ExperimentConfig& cfg);

// Same, plus writes traces, summaries, the comparison table and the pooled
// time series under cfg.output_dir.
ExperimentOutcome run_experiment_to_files(const ExperimentConfig& cfg);

// Builds the RunSummary for one arm of one seed (shared by the experiment
// driver and the acceptance suite).
RunSummary summarize_run(const ExperimentConfig& cfg, std::uint64_t seed,
                         const std::string& mode, const RunResult& result,
                         const ElysiumThreshold& threshold);

// Executes one arm. mode "minos" honours cfg.policy.enabled; "baseline"
// always runs with the policy disabled.
RunResult run_arm(const ExperimentConfig& cfg, std::uint64_t seed, const std::string& mode,
                  const ElysiumThreshold& threshold);

}  // namespace minos
