#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "minos/config.hpp"
#include "minos/event_queue.hpp"
#include "minos/rng.hpp"

namespace minos {

// Phase-duration model of the two-phase function body. The prepare phase is
// network-bound and does not scale with node speed; compute and the benchmark
// scale with 1/perf_factor. All wall durations are whole milliseconds.
struct FunctionProfile {
    Distribution prepare_ms;
    double compute_base_ms;
    double benchmark_base_ms;
    double benchmark_noise_sigma;

    SimTime sample_prepare(RngStream& rng) const {
        return std::max<SimTime>(1, std::llround(prepare_ms.sample(rng)));
    }

    SimTime compute_duration(double perf_factor) const {
        return std::max<SimTime>(1, std::llround(compute_base_ms / perf_factor));
    }

    // The measured benchmark score: true duration distorted by multiplicative
    // timing jitter. The score is also the benchmark's wall time, rounded to
    // the clock grid.
    double benchmark_score(double perf_factor, RngStream& noise_rng) const {
        double score = benchmark_base_ms / perf_factor;
        if (benchmark_noise_sigma > 0.0)
            score *= 1.0 + benchmark_noise_sigma * noise_rng.normal();
        return std::max(score, 1e-9);
    }

    static SimTime benchmark_wall_ms(double score) {
        return std::max<SimTime>(1, std::llround(score));
    }
};

inline FunctionProfile make_profile(const WorkloadConfig& wl, const PolicyConfig& po) {
    return FunctionProfile{wl.prepare_ms, wl.compute_base_ms, po.benchmark_base_ms,
                           po.benchmark_noise_sigma};
}

// Closed-loop virtual user: one request in flight at a time; the next request
// goes out think_time after the previous completion, until the experiment
// window closes.
struct VirtualUser {
    std::uint32_t vu_id = 0;
    std::uint64_t completions = 0;
    bool in_flight = false;
};

}  // namespace minos
