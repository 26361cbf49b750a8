#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "minos/config.hpp"
#include "minos/event_queue.hpp"
#include "minos/stats.hpp"

namespace minos {

// The benchmark score a newly started instance must beat (lower is better) to
// avoid terminating itself. +infinity means everything passes.
struct ElysiumThreshold {
    double value = std::numeric_limits<double>::infinity();
    double target_pass_fraction = 1.0;

    static ElysiumThreshold pass_all() { return {}; }
};

struct BenchmarkResult {
    std::uint32_t instance_id = 0;
    double score = 0.0;  // ms to complete the fixed benchmark workload
    SimTime measured_at = 0;
};

enum class Judgement : std::uint8_t { Pass, Terminate };

// Local decision, a pure function of one observation and one configured
// value; ties pass, which keeps quantile calibration self-consistent.
inline Judgement judge(double score, const ElysiumThreshold& threshold) {
    return score <= threshold.value ? Judgement::Pass : Judgement::Terminate;
}

// Threshold such that fraction q of the calibration sample passes it
// (nearest-rank q-quantile of the scores, lower is better). Rejects an empty
// sample.
ElysiumThreshold calibrate_pretest(const std::vector<double>& scores, double pass_fraction);

enum class PolicyMode : std::uint8_t {
    Disabled,     // baseline: no benchmark at all
    ObserveOnly,  // pre-test: benchmarks run and are recorded, nothing terminates
    Active,       // full mechanism
};

// Per-run policy state: the threshold currently in force plus, in online
// mode, the streaming estimators fed by benchmark reports. The simulation
// hands an instance its threshold exactly once, at cold start; ticks only
// affect later cold starts.
class PolicyEngine {
public:
    PolicyEngine(const PolicyConfig& cfg, PolicyMode mode);

    PolicyMode mode() const { return mode_; }
    const PolicyConfig& config() const { return cfg_; }

    bool benchmarks_cold_starts() const { return mode_ != PolicyMode::Disabled; }

    // Escape hatch: once an invocation has caused retry_cap terminations it is
    // accepted without benchmarking.
    bool exempts(std::uint32_t retry_count) const {
        return mode_ == PolicyMode::Active && retry_count >= cfg_.retry_cap;
    }

    Judgement judge_cold_start(double score, const ElysiumThreshold& threshold) const {
        if (mode_ != PolicyMode::Active) return Judgement::Pass;
        return judge(score, threshold);
    }

    const ElysiumThreshold& current_threshold() const { return threshold_; }
    void set_threshold(const ElysiumThreshold& t) { threshold_ = t; }

    // Every finished benchmark reports here (pass or fail). Online mode feeds
    // the streaming estimators; other modes just count.
    void observe(double score);
    std::uint64_t observed() const { return observed_; }

    // Periodic recalculation in online mode: replaces the threshold with the
    // current quantile estimate once at least 5 observations exist. Returns
    // true if the threshold changed.
    bool online_tick();

    const WelfordState& score_stats() const { return welford_; }
    const P2Quantile& score_quantile() const { return p2_; }

private:
    PolicyConfig cfg_;
    PolicyMode mode_;
    ElysiumThreshold threshold_;
    WelfordState welford_;
    P2Quantile p2_;
    std::uint64_t observed_ = 0;
};

}  // namespace minos
