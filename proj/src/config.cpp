#include "minos/config.hpp"

#include <fstream>
#include <sstream>

#include "minos/errors.hpp"

namespace minos {

const char* to_string(ThresholdMode m) {
    switch (m) {
        case ThresholdMode::Fixed: return "fixed";
        case ThresholdMode::PreTest: return "pretest";
        case ThresholdMode::Online: return "online";
    }
    return "?";
}

Nano CostConfig::resolved_inv_nano() const {
    if (memory_tier == "small-128mb") return 50 * exec_nano_per_ms;
    if (memory_tier == "large-32gb") return 3 * exec_nano_per_ms;
    return inv_nano.value_or(0);
}

CostParams CostConfig::to_params() const {
    return CostParams{exec_nano_per_ms, resolved_inv_nano(), memory_tier};
}

ExperimentConfig default_config() { return ExperimentConfig{}; }

std::vector<std::string> validate_config(const ExperimentConfig& cfg) {
    std::vector<std::string> errors;
    auto err = [&](const std::string& msg) { errors.push_back(msg); };

    const auto& pf = cfg.platform;
    if (pf.node_pool_size < 1) err("platform.node_pool_size: must be >= 1");
    if (pf.node_capacity < 1) err("platform.node_capacity: must be >= 1");
    if (pf.idle_timeout_ms <= 0) err("platform.idle_timeout_ms: must be > 0");
    pf.cold_start_delay_ms.validate("platform.cold_start_delay_ms", false, errors);
    pf.perf_distribution.validate("platform.perf_distribution", true, errors);

    const auto& po = cfg.policy;
    if (po.retry_cap < 1) err("policy.retry_cap: must be >= 1");
    if (!(po.target_pass_fraction > 0.0 && po.target_pass_fraction <= 1.0))
        err("policy.target_pass_fraction: must be in (0, 1]");
    if (po.benchmark_base_ms <= 0.0) err("policy.benchmark_base_ms: must be > 0");
    if (po.benchmark_noise_sigma < 0.0) err("policy.benchmark_noise_sigma: must be >= 0");
    if (po.initial_threshold_ms && *po.initial_threshold_ms <= 0.0)
        err("policy.initial_threshold_ms: must be > 0 when set");
    if (po.enabled && po.threshold_mode == ThresholdMode::Fixed && !po.initial_threshold_ms)
        err("policy.initial_threshold_ms: required when threshold_mode is \"fixed\"");
    if (po.online_tick_period_ms <= 0) err("policy.online_tick_period_ms: must be > 0");

    const auto& wl = cfg.workload;
    if (wl.vu_count < 1) err("workload.vu_count: must be >= 1");
    if (wl.think_time_ms <= 0) err("workload.think_time_ms: must be > 0");
    if (wl.duration_ms <= 0) err("workload.duration_ms: must be > 0");
    if (wl.pretest_vu_count < 1) err("workload.pretest_vu_count: must be >= 1");
    if (wl.pretest_duration_ms <= 0) err("workload.pretest_duration_ms: must be > 0");
    wl.prepare_ms.validate("workload.prepare_ms", false, errors);
    if (wl.compute_base_ms <= 0.0) err("workload.compute_base_ms: must be > 0");

    const auto& co = cfg.cost;
    if (co.memory_tier != "small-128mb" && co.memory_tier != "large-32gb" &&
        co.memory_tier != "custom")
        err("cost.memory_tier: must be one of small-128mb, large-32gb, custom");
    if (co.exec_nano_per_ms <= 0) err("cost.exec_nano_per_ms: must be > 0");
    if (co.memory_tier == "custom") {
        if (!co.inv_nano)
            err("cost.inv_nano: required when memory_tier is \"custom\"");
        else if (*co.inv_nano < 0)
            err("cost.inv_nano: must be >= 0");
    } else if (co.inv_nano) {
        err("cost.inv_nano: only allowed with memory_tier \"custom\" (presets derive it)");
    }

    if (cfg.seeds.empty()) err("seeds: must list at least one seed");
    if (cfg.output_dir.empty()) err("output_dir: must not be empty");
    return errors;
}

namespace {

using nlohmann::json;

struct Parser {
    std::vector<std::string>& errors;

    void unknown_keys(const json& j, const std::string& prefix,
                      std::initializer_list<const char*> known) {
        if (!j.is_object()) return;
        for (auto it = j.begin(); it != j.end(); ++it) {
            bool ok = false;
            for (const char* k : known)
                if (it.key() == k) ok = true;
            if (!ok) errors.push_back(prefix + it.key() + ": unknown key");
        }
    }

    template <typename T>
    void get(const json& j, const char* field, const std::string& prefix, T& out) {
        if (!j.contains(field)) return;
        const json& v = j[field];
        try {
            out = v.get<T>();
        } catch (const json::exception&) {
            errors.push_back(prefix + field + ": wrong type");
        }
    }

    // Integer fields are parsed through int64 with explicit range checks so a
    // negative value cannot wrap into a huge unsigned one.
    void get_u32(const json& j, const char* field, const std::string& prefix,
                 std::uint32_t& out) {
        if (!j.contains(field)) return;
        const json& v = j[field];
        if (!v.is_number_integer() || v.get<std::int64_t>() < 0 ||
            v.get<std::int64_t>() > 0xffffffffLL) {
            errors.push_back(prefix + field + ": expected a non-negative integer");
            return;
        }
        out = static_cast<std::uint32_t>(v.get<std::int64_t>());
    }

    void get_i64(const json& j, const char* field, const std::string& prefix,
                 std::int64_t& out) {
        if (!j.contains(field)) return;
        const json& v = j[field];
        if (!v.is_number_integer()) {
            errors.push_back(prefix + field + ": expected an integer");
            return;
        }
        out = v.get<std::int64_t>();
    }

    void get_dist(const json& j, const char* field, const std::string& prefix,
                  Distribution& out) {
        if (!j.contains(field)) return;
        out = Distribution::from_json(j[field], prefix + field, errors);
    }

    template <typename T>
    void get_optional(const json& j, const char* field, const std::string& prefix,
                      std::optional<T>& out) {
        if (!j.contains(field) || j[field].is_null()) return;
        T v{};
        get(j, field, prefix, v);
        out = v;
    }
};

}  // namespace

ExperimentConfig config_from_json(const json& j, std::vector<std::string>& errors) {
    ExperimentConfig cfg;
    Parser p{errors};
    if (!j.is_object()) {
        errors.push_back("config root must be a JSON object");
        return cfg;
    }
    p.unknown_keys(j, "", {"platform", "policy", "workload", "cost", "seeds", "output_dir"});

    if (j.contains("platform")) {
        const json& q = j["platform"];
        p.unknown_keys(q, "platform.",
                       {"node_pool_size", "node_capacity", "idle_timeout_ms",
                        "cold_start_delay_ms", "perf_distribution"});
        p.get_u32(q, "node_pool_size", "platform.", cfg.platform.node_pool_size);
        p.get_u32(q, "node_capacity", "platform.", cfg.platform.node_capacity);
        p.get_i64(q, "idle_timeout_ms", "platform.", cfg.platform.idle_timeout_ms);
        p.get_dist(q, "cold_start_delay_ms", "platform.", cfg.platform.cold_start_delay_ms);
        p.get_dist(q, "perf_distribution", "platform.", cfg.platform.perf_distribution);
    }
    if (j.contains("policy")) {
        const json& q = j["policy"];
        p.unknown_keys(q, "policy.",
                       {"enabled", "retry_cap", "threshold_mode", "target_pass_fraction",
                        "benchmark_base_ms", "benchmark_noise_sigma", "initial_threshold_ms",
                        "online_tick_period_ms"});
        p.get(q, "enabled", "policy.", cfg.policy.enabled);
        p.get_u32(q, "retry_cap", "policy.", cfg.policy.retry_cap);
        if (q.contains("threshold_mode")) {
            std::string m;
            p.get(q, "threshold_mode", "policy.", m);
            if (m == "fixed")
                cfg.policy.threshold_mode = ThresholdMode::Fixed;
            else if (m == "pretest")
                cfg.policy.threshold_mode = ThresholdMode::PreTest;
            else if (m == "online")
                cfg.policy.threshold_mode = ThresholdMode::Online;
            else
                errors.push_back("policy.threshold_mode: unknown mode \"" + m +
                                 "\" (supported: fixed, pretest, online)");
        }
        p.get(q, "target_pass_fraction", "policy.", cfg.policy.target_pass_fraction);
        p.get(q, "benchmark_base_ms", "policy.", cfg.policy.benchmark_base_ms);
        p.get(q, "benchmark_noise_sigma", "policy.", cfg.policy.benchmark_noise_sigma);
        p.get_optional(q, "initial_threshold_ms", "policy.", cfg.policy.initial_threshold_ms);
        p.get_i64(q, "online_tick_period_ms", "policy.", cfg.policy.online_tick_period_ms);
    }
    if (j.contains("workload")) {
        const json& q = j["workload"];
        p.unknown_keys(q, "workload.",
                       {"vu_count", "think_time_ms", "duration_ms", "pretest_vu_count",
                        "pretest_duration_ms", "prepare_ms", "compute_base_ms"});
        p.get_u32(q, "vu_count", "workload.", cfg.workload.vu_count);
        p.get_i64(q, "think_time_ms", "workload.", cfg.workload.think_time_ms);
        p.get_i64(q, "duration_ms", "workload.", cfg.workload.duration_ms);
        p.get_u32(q, "pretest_vu_count", "workload.", cfg.workload.pretest_vu_count);
        p.get_i64(q, "pretest_duration_ms", "workload.", cfg.workload.pretest_duration_ms);
        p.get_dist(q, "prepare_ms", "workload.", cfg.workload.prepare_ms);
        p.get(q, "compute_base_ms", "workload.", cfg.workload.compute_base_ms);
    }
    if (j.contains("cost")) {
        const json& q = j["cost"];
        p.unknown_keys(q, "cost.",
                       {"memory_tier", "exec_nano_per_ms", "inv_nano", "memory_mb", "vcpu"});
        p.get(q, "memory_tier", "cost.", cfg.cost.memory_tier);
        p.get_i64(q, "exec_nano_per_ms", "cost.", cfg.cost.exec_nano_per_ms);
        p.get_optional(q, "inv_nano", "cost.", cfg.cost.inv_nano);
        p.get(q, "memory_mb", "cost.", cfg.cost.memory_mb);
        p.get(q, "vcpu", "cost.", cfg.cost.vcpu);
    }
    p.get(j, "seeds", "", cfg.seeds);
    p.get(j, "output_dir", "", cfg.output_dir);
    return cfg;
}

nlohmann::json config_to_json(const ExperimentConfig& cfg) {
    json j;
    j["platform"] = {{"node_pool_size", cfg.platform.node_pool_size},
                     {"node_capacity", cfg.platform.node_capacity},
                     {"idle_timeout_ms", cfg.platform.idle_timeout_ms},
                     {"cold_start_delay_ms", cfg.platform.cold_start_delay_ms.to_json()},
                     {"perf_distribution", cfg.platform.perf_distribution.to_json()}};
    j["policy"] = {{"enabled", cfg.policy.enabled},
                   {"retry_cap", cfg.policy.retry_cap},
                   {"threshold_mode", to_string(cfg.policy.threshold_mode)},
                   {"target_pass_fraction", cfg.policy.target_pass_fraction},
                   {"benchmark_base_ms", cfg.policy.benchmark_base_ms},
                   {"benchmark_noise_sigma", cfg.policy.benchmark_noise_sigma},
                   {"initial_threshold_ms", cfg.policy.initial_threshold_ms
                                                ? json(*cfg.policy.initial_threshold_ms)
                                                : json(nullptr)},
                   {"online_tick_period_ms", cfg.policy.online_tick_period_ms}};
    j["workload"] = {{"vu_count", cfg.workload.vu_count},
                     {"think_time_ms", cfg.workload.think_time_ms},
                     {"duration_ms", cfg.workload.duration_ms},
                     {"pretest_vu_count", cfg.workload.pretest_vu_count},
                     {"pretest_duration_ms", cfg.workload.pretest_duration_ms},
                     {"prepare_ms", cfg.workload.prepare_ms.to_json()},
                     {"compute_base_ms", cfg.workload.compute_base_ms}};
    j["cost"] = {{"memory_tier", cfg.cost.memory_tier},
                 {"exec_nano_per_ms", cfg.cost.exec_nano_per_ms},
                 {"inv_nano", cfg.cost.inv_nano ? json(*cfg.cost.inv_nano) : json(nullptr)},
                 {"memory_mb", cfg.cost.memory_mb},
                 {"vcpu", cfg.cost.vcpu}};
    j["seeds"] = cfg.seeds;
    j["output_dir"] = cfg.output_dir;
    return j;
}

namespace {

// Applies one "a.b.c=value" override onto the raw JSON tree. Values parse as
// JSON when possible (numbers, booleans, null, arrays), else as strings.
void apply_override(json& root, const std::string& spec, std::vector<std::string>& errors) {
    auto eq = spec.find('=');
    if (eq == std::string::npos) {
        errors.push_back("override \"" + spec + "\": expected key.path=value");
        return;
    }
    std::string path = spec.substr(0, eq);
    std::string raw = spec.substr(eq + 1);
    json value;
    try {
        value = json::parse(raw);
    } catch (const json::exception&) {
        value = raw;  // plain string
    }
    json* node = &root;
    std::size_t start = 0;
    while (true) {
        auto dot = path.find('.', start);
        std::string part = path.substr(start, dot == std::string::npos ? dot : dot - start);
        if (part.empty()) {
            errors.push_back("override \"" + spec + "\": empty path segment");
            return;
        }
        if (dot == std::string::npos) {
            (*node)[part] = value;
            return;
        }
        node = &(*node)[part];
        start = dot + 1;
    }
}

}  // namespace

ExperimentConfig load_config(const std::optional<std::string>& path,
                             const std::vector<std::string>& overrides) {
    json raw = config_to_json(default_config());
    if (path) {
        std::ifstream in(*path);
        if (!in) throw ConfigError("cannot open config file: " + *path);
        try {
            json file = json::parse(in);
            // File wins over defaults key by key; absent keys keep defaults.
            raw.merge_patch(file);
        } catch (const json::exception& e) {
            throw ConfigError("config parse error in " + *path + ": " + e.what());
        }
    }
    std::vector<std::string> errors;
    for (const auto& o : overrides) apply_override(raw, o, errors);
    ExperimentConfig cfg = config_from_json(raw, errors);
    auto more = validate_config(cfg);
    errors.insert(errors.end(), more.begin(), more.end());
    if (!errors.empty()) {
        std::ostringstream msg;
        msg << "invalid configuration:";
        for (const auto& e : errors) msg << "\n  - " << e;
        throw ConfigError(msg.str());
    }
    return cfg;
}

}  // namespace minos
