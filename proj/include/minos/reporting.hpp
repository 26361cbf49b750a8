#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "minos/json.hpp"

#include "minos/cost.hpp"
#include "minos/event_queue.hpp"

namespace minos {

// Cumulative cost and success counts sampled once per virtual second.
// Cost-per-success comparisons use exact integer cross-multiplication; a
// sample with zero successes counts as infinitely expensive.
struct CostSeries {
    SimTime sample_period_ms = 1000;
    std::vector<Nano> cumulative_cost;
    std::vector<std::uint64_t> cumulative_successes;

    std::size_t size() const { return cumulative_cost.size(); }
    std::optional<double> ratio_at(std::size_t i) const {
        if (cumulative_successes[i] == 0) return std::nullopt;
        return static_cast<double>(cumulative_cost[i]) /
               static_cast<double>(cumulative_successes[i]);
    }
};

struct RunSummary {
    std::string mode;  // "baseline" | "minos"
    std::uint64_t seed = 0;
    std::uint64_t successful_requests = 0;  // completed within the experiment window
    std::optional<double> mean_compute_ms, median_compute_ms;
    std::optional<double> mean_end_to_end_ms, median_end_to_end_ms;
    std::uint64_t termination_count = 0;
    std::vector<std::uint64_t> retry_histogram;  // index = re-queues per invocation
    CostReport cost;
    std::optional<Nano> cost_per_million;
    CostSeries series;

    // Context the metrics were computed under; carried so that compare() can
    // reject mismatched runs and verify() can re-derive everything.
    SimTime duration_ms = 0;
    CostParams cost_params;
    std::uint32_t retry_cap = 1;
    std::uint64_t compute_sample_count = 0;
    double threshold_value = 0.0;  // +inf when the policy passes everything
    double target_pass_fraction = 1.0;
    nlohmann::json config_echo;
};

struct SummarizeInputs {
    std::string mode;
    std::uint64_t seed = 0;
    SimTime duration_ms = 0;
    CostParams cost_params;
    std::uint32_t retry_cap = 1;
    double threshold_value = 0.0;
    double target_pass_fraction = 1.0;
    nlohmann::json config_echo;
    SimTime sample_period_ms = 1000;
};

// Post-hoc aggregation over the immutable trace; rejects an empty trace.
RunSummary summarize(const std::vector<AttemptRecord>& trace, const SummarizeInputs& in);

struct ComparisonReport {
    std::string label;  // seed as text, or "all" for the pooled row
    double compute_speedup_pct = 0.0;
    double success_delta_pct = 0.0;
    double cost_delta_pct = 0.0;
    // First sample time from which the treatment arm's cumulative
    // cost-per-success stays strictly below the baseline's to the end.
    std::optional<SimTime> crossover_time_ms;
    // Seconds where the treatment arm is strictly cheaper, ties counting one
    // half, over all samples.
    double fraction_of_time_cheaper = 0.0;
};

// Paired comparison; both summaries must share seed, platform, workload and
// cost configuration (policy knobs legitimately differ between arms).
ComparisonReport compare(const RunSummary& baseline, const RunSummary& treatment);

// Pooled comparison across seeds: sums of costs, successes and series.
ComparisonReport compare_pooled(const std::vector<RunSummary>& baselines,
                                const std::vector<RunSummary>& treatments);

// Independent oracle pass over a raw trace: re-derives billing from the phase
// columns, re-sums the cost equation in fixed point, re-checks per-invocation
// attempt structure, retry caps and every summary statistic. Returns one
// message per violation; empty means clean.
std::vector<std::string> verify_run(const std::vector<AttemptRecord>& trace,
                                    const RunSummary& summary);

// Serialization. Double fields use shortest-round-trip formatting so that
// identical runs produce byte-identical files.
std::string trace_to_csv(const std::vector<AttemptRecord>& trace);
std::vector<AttemptRecord> trace_from_csv(const std::string& csv);
nlohmann::json summary_to_json(const RunSummary& s);
RunSummary summary_from_json(const nlohmann::json& j);
std::string comparison_to_csv(const std::vector<ComparisonReport>& rows);
std::string timeseries_to_csv(const CostSeries& baseline, const CostSeries& treatment);

std::string format_double(double v);

}  // namespace minos
