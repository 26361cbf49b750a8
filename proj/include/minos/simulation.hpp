#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "minos/config.hpp"
#include "minos/cost.hpp"
#include "minos/event_queue.hpp"
#include "minos/platform.hpp"
#include "minos/policy.hpp"

namespace minos {

struct RunSpec {
    std::uint32_t vu_count = 1;
    SimTime duration_ms = 1000;
    PolicyMode mode = PolicyMode::Disabled;
    ElysiumThreshold threshold = ElysiumThreshold::pass_all();
    bool collect_event_log = false;
    // Streams other than node_perf get this prefix, so a calibration run
    // draws independently of the main runs while seeing the same node pool.
    std::string stream_prefix;
};

struct EventLogEntry {
    SimTime fire_at;
    std::uint64_t seq;
    EventKind kind;

    bool operator==(const EventLogEntry&) const = default;
};

struct RunCounters {
    std::uint64_t cold_starts = 0;
    std::uint64_t warm_reuses = 0;
    std::uint64_t benchmarks_run = 0;
    std::uint64_t terminations = 0;
    std::uint64_t exempt_passes = 0;
    std::uint64_t submitted = 0;
    std::uint64_t completed = 0;
    std::uint64_t processed_events = 0;
};

struct NodePerf {
    std::uint32_t node_id;
    double perf_factor;
};

struct RunResult {
    std::vector<AttemptRecord> trace;        // ordered by attempt end time
    std::vector<BenchmarkResult> observations;
    std::vector<NodePerf> node_perf;
    RunCounters counters;
    ElysiumThreshold initial_threshold;
    ElysiumThreshold final_threshold;
    std::vector<EventLogEntry> event_log;    // only when requested
};

// Executes one closed-loop run to completion: virtual users stop submitting
// at duration_ms, then the queue drains so every submitted invocation
// finishes (completions after the cutoff count as incomplete-at-cutoff in
// reporting, but are still billed). Fully deterministic in (cfg, seed, spec).
RunResult run_simulation(const ExperimentConfig& cfg, std::uint64_t seed, const RunSpec& spec);

// Observe-only calibration run using the pretest workload knobs; returns the
// collected benchmark scores.
std::vector<double> run_pretest_scores(const ExperimentConfig& cfg, std::uint64_t seed);

// Threshold the active arm starts with: configured value for Fixed/Online
// modes, a fresh calibration run for PreTest.
ElysiumThreshold resolve_threshold(const ExperimentConfig& cfg, std::uint64_t seed);

}  // namespace minos
