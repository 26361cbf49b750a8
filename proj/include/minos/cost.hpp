#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "minos/event_queue.hpp"

namespace minos {

// Currency is a fixed-point integer in nano-units so the billing equation can
// be checked for exact equality against an independent re-summation.
using Nano = std::int64_t;

enum class AttemptClass : std::uint8_t {
    Terminated,       // failed the benchmark, crashed before compute
    PassedColdStart,  // cold start that ran (or was exempted from) the benchmark
    WarmReuse,        // served by an already-warm instance
};

const char* to_string(AttemptClass c);
AttemptClass attempt_class_from_string(const std::string& s);

// One row of the per-attempt trace. Phase durations are whole virtual
// milliseconds; benchmark_score keeps the un-rounded measurement that the
// judging decision saw (absent for warm, exempt, and policy-off attempts).
struct AttemptRecord {
    std::uint64_t invocation_id = 0;
    std::uint32_t vu_id = 0;
    std::uint32_t attempt_index = 0;
    AttemptClass klass = AttemptClass::PassedColdStart;
    std::uint32_t node_id = 0;
    double perf_factor = 1.0;
    SimTime prepare_ms = 0;
    SimTime benchmark_ms = 0;
    std::optional<double> benchmark_score;
    SimTime compute_ms = 0;
    SimTime billed_ms = 0;
    SimTime submitted_at = 0;  // when this attempt entered the platform queue
    SimTime completed_at = 0;  // completion or crash instant
};

struct CostParams {
    Nano exec_nano_per_ms = 1000;  // price per billed millisecond
    Nano inv_nano = 50000;         // price per invocation attempt
    std::string memory_tier = "small-128mb";

    bool operator==(const CostParams&) const = default;
};

struct CostReport {
    Nano total_nano = 0;
    std::uint64_t n_term = 0, n_pass = 0, n_reuse = 0;
    SimTime billed_term_ms = 0, billed_pass_ms = 0, billed_reuse_ms = 0;

    std::uint64_t attempt_count() const { return n_term + n_pass + n_reuse; }
    SimTime billed_total_ms() const { return billed_term_ms + billed_pass_ms + billed_reuse_ms; }

    bool operator==(const CostReport&) const = default;
};

// Billable wall time of a finished attempt. The benchmark runs in parallel
// with prepare, so cold-start attempts pay max(prepare, benchmark); a crash
// happens at the end of that parallel window, before any compute.
SimTime billed_ms(AttemptClass klass, SimTime prepare_ms, SimTime benchmark_ms,
                  SimTime compute_ms);

// Evaluates the billing equation
//   total = c_exec * (sum d_term + sum d_pass + sum d_reuse)
//         + c_inv  * (n_term + n_pass + n_reuse)
// exactly, in fixed point.
CostReport total_cost(std::span<const AttemptRecord> attempts, const CostParams& params);

// total / successes * 10^6; rejects zero successes.
Nano cost_per_million_successful(const CostReport& report, std::uint64_t successful);

}  // namespace minos
