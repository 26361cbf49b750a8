#include <doctest.h>

#include <algorithm>

#include "minos/config.hpp"
#include "minos/errors.hpp"
#include "minos/json.hpp"

using namespace minos;

namespace {

bool mentions(const std::vector<std::string>& errors, const std::string& needle) {
    return std::any_of(errors.begin(), errors.end(), [&](const std::string& e) {
        return e.find(needle) != std::string::npos;
    });
}

}  // namespace

TEST_CASE("the default config validates cleanly and round-trips through JSON") {
    auto cfg = default_config();
    CHECK(validate_config(cfg).empty());
    std::vector<std::string> errors;
    auto back = config_from_json(config_to_json(cfg), errors);
    CHECK(errors.empty());
    CHECK(back == cfg);
}

TEST_CASE("a zero retry cap is rejected by name") {
    auto cfg = default_config();
    cfg.policy.retry_cap = 0;
    auto errors = validate_config(cfg);
    CHECK(mentions(errors, "policy.retry_cap"));
}

TEST_CASE("the experiment pass fraction is accepted") {
    auto cfg = default_config();
    cfg.policy.target_pass_fraction = 0.4;
    CHECK(validate_config(cfg).empty());
    cfg.policy.target_pass_fraction = 0.0;
    CHECK(mentions(validate_config(cfg), "policy.target_pass_fraction"));
    cfg.policy.target_pass_fraction = 1.5;
    CHECK(mentions(validate_config(cfg), "policy.target_pass_fraction"));
}

TEST_CASE("an unknown distribution name lists the supported ones") {
    nlohmann::json j = config_to_json(default_config());
    j["platform"]["perf_distribution"] = {{"dist", "zipf"}, {"s", 1.1}};
    std::vector<std::string> errors;
    config_from_json(j, errors);
    REQUIRE(mentions(errors, "platform.perf_distribution"));
    CHECK(mentions(errors, "lognormal"));
    CHECK(mentions(errors, "constant"));
}

TEST_CASE("unknown keys and wrong types are reported with their paths") {
    nlohmann::json j = config_to_json(default_config());
    j["platform"]["nodes"] = 5;  // typo'd key
    j["workload"]["vu_count"] = "ten";
    std::vector<std::string> errors;
    config_from_json(j, errors);
    CHECK(mentions(errors, "platform.nodes"));
    CHECK(mentions(errors, "workload.vu_count"));
}

TEST_CASE("negative integers do not wrap into huge unsigned values") {
    nlohmann::json j = config_to_json(default_config());
    j["policy"]["retry_cap"] = -3;
    std::vector<std::string> errors;
    config_from_json(j, errors);
    CHECK(mentions(errors, "policy.retry_cap"));
}

TEST_CASE("fixed threshold mode requires an initial threshold") {
    auto cfg = default_config();
    cfg.policy.threshold_mode = ThresholdMode::Fixed;
    CHECK(mentions(validate_config(cfg), "policy.initial_threshold_ms"));
    cfg.policy.initial_threshold_ms = 310.0;
    CHECK(validate_config(cfg).empty());
}

TEST_CASE("tier presets derive the invocation price from the execution price") {
    CostConfig c;
    c.exec_nano_per_ms = 1000;
    c.memory_tier = "small-128mb";
    CHECK(c.resolved_inv_nano() == 50000);  // 50 ms worth of execution
    c.memory_tier = "large-32gb";
    CHECK(c.resolved_inv_nano() == 3000);  // 3 ms worth

    auto cfg = default_config();
    cfg.cost.memory_tier = "custom";
    CHECK(mentions(validate_config(cfg), "cost.inv_nano"));
    cfg.cost.inv_nano = 12;
    CHECK(validate_config(cfg).empty());
    cfg.cost.memory_tier = "small-128mb";
    CHECK(mentions(validate_config(cfg), "cost.inv_nano"));  // presets derive it
}

TEST_CASE("invalid distribution parameters are rejected at load") {
    auto cfg = default_config();
    cfg.platform.perf_distribution = Distribution{Distribution::Kind::LogNormal, -1.0, 0.2};
    CHECK(mentions(validate_config(cfg), "platform.perf_distribution"));
    cfg.platform.perf_distribution = Distribution{Distribution::Kind::Normal, 1.0, 0.2};
    CHECK(mentions(validate_config(cfg), "platform.perf_distribution"));
    cfg.platform.perf_distribution = Distribution::uniform(0.5, 1.5);
    CHECK(validate_config(cfg).empty());
    cfg.workload.prepare_ms = Distribution::uniform(30.0, 10.0);  // low > high
    CHECK(mentions(validate_config(cfg), "workload.prepare_ms"));
}

TEST_CASE("load_config applies dotted overrides before validating") {
    auto cfg = load_config(std::nullopt, {"workload.vu_count=20",
                                          "platform.perf_distribution.sigma=0.2",
                                          "policy.enabled=false"});
    CHECK(cfg.workload.vu_count == 20);
    CHECK(cfg.platform.perf_distribution.b == 0.2);
    CHECK_FALSE(cfg.policy.enabled);
    CHECK_THROWS_AS(load_config(std::nullopt, {"policy.retry_cap=0"}), ConfigError);
    CHECK_THROWS_AS(load_config(std::nullopt, {"no-equals-sign"}), ConfigError);
}
