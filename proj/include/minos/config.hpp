#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "minos/json.hpp"

#include "minos/cost.hpp"
#include "minos/distribution.hpp"
#include "minos/event_queue.hpp"

namespace minos {

struct PlatformConfig {
    std::uint32_t node_pool_size = 100;
    std::uint32_t node_capacity = 4;  // max concurrent instances per node
    SimTime idle_timeout_ms = 600000;
    Distribution cold_start_delay_ms = Distribution::constant(500.0);
    // Hidden per-node speed multiplier; 1.0 is nominal. The sigma default is
    // calibrated so that keeping only the fastest 40% of instances yields a
    // compute speedup in the high-single-digit range (see tests/acceptance).
    Distribution perf_distribution = Distribution::lognormal(1.0, 0.12);

    bool operator==(const PlatformConfig&) const = default;
};

enum class ThresholdMode : std::uint8_t { Fixed, PreTest, Online };

const char* to_string(ThresholdMode m);

struct PolicyConfig {
    bool enabled = true;
    std::uint32_t retry_cap = 5;  // re-queues allowed before the escape hatch
    ThresholdMode threshold_mode = ThresholdMode::PreTest;
    double target_pass_fraction = 0.40;  // fraction of cold starts that should pass
    double benchmark_base_ms = 300.0;    // benchmark wall time at perf_factor 1.0
    double benchmark_noise_sigma = 0.05; // relative noise on the observed score
    // Threshold used in Fixed mode, and in Online mode until enough
    // observations arrive. Unset means +infinity (everything passes).
    std::optional<double> initial_threshold_ms;
    SimTime online_tick_period_ms = 30000;

    bool operator==(const PolicyConfig&) const = default;
};

struct WorkloadConfig {
    std::uint32_t vu_count = 10;
    SimTime think_time_ms = 1000;
    SimTime duration_ms = 1800000;  // 30 minutes
    std::uint32_t pretest_vu_count = 10;
    SimTime pretest_duration_ms = 60000;
    // Two-phase function body: a network-bound prepare (unaffected by node
    // speed) followed by CPU-bound compute scaled by 1/perf_factor.
    Distribution prepare_ms = Distribution::constant(400.0);
    double compute_base_ms = 2000.0;

    bool operator==(const WorkloadConfig&) const = default;
};

struct CostConfig {
    std::string memory_tier = "small-128mb";  // small-128mb | large-32gb | custom
    Nano exec_nano_per_ms = 1000;
    // Required for the custom tier; derived from the tier otherwise
    // (small: 50 ms worth of execution per invocation, large: 3 ms).
    std::optional<Nano> inv_nano;
    // Metadata only; the perf model already folds CPU share into perf_factor.
    double memory_mb = 256.0;
    double vcpu = 0.167;

    Nano resolved_inv_nano() const;
    CostParams to_params() const;

    bool operator==(const CostConfig&) const = default;
};

struct ExperimentConfig {
    PlatformConfig platform;
    PolicyConfig policy;
    WorkloadConfig workload;
    CostConfig cost;
    std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5, 6, 7};
    std::string output_dir = "out";

    bool operator==(const ExperimentConfig&) const = default;
};

ExperimentConfig default_config();

// Every message names the offending key; empty result means valid.
std::vector<std::string> validate_config(const ExperimentConfig& cfg);

// Parse/serialize. Parsing collects all errors (unknown keys, bad types, bad
// values) instead of stopping at the first.
ExperimentConfig config_from_json(const nlohmann::json& j, std::vector<std::string>& errors);
nlohmann::json config_to_json(const ExperimentConfig& cfg);

// Loads a config file, applies "a.b.c=value" overrides, validates. Throws
// ConfigError listing every problem.
ExperimentConfig load_config(const std::optional<std::string>& path,
                             const std::vector<std::string>& overrides);

}  // namespace minos
