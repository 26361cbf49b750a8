#include <doctest.h>

#include <cmath>
#include <vector>

#include "minos/cost.hpp"
#include "minos/experiment.hpp"
#include "minos/rng.hpp"
#include "minos/simulation.hpp"
#include "test_util.hpp"

using namespace minos;

namespace {

AttemptRecord make(AttemptClass k, SimTime prep, SimTime bench, SimTime comp) {
    AttemptRecord a;
    a.klass = k;
    a.prepare_ms = prep;
    a.benchmark_ms = bench;
    a.compute_ms = comp;
    a.billed_ms = billed_ms(k, prep, bench, comp);
    return a;
}

}  // namespace

TEST_CASE("billed time per classification") {
    CHECK(billed_ms(AttemptClass::PassedColdStart, 400, 300, 2000) == 2400);
    CHECK(billed_ms(AttemptClass::Terminated, 400, 300, 0) == 400);
    CHECK(billed_ms(AttemptClass::Terminated, 250, 300, 0) == 300);  // benchmark outlived prepare
    CHECK(billed_ms(AttemptClass::WarmReuse, 400, 0, 2000) == 2400);
}

TEST_CASE("the cost equation on a hand-evaluated pair of attempts") {
    CostParams params{1, 50, "small-128mb"};  // c_inv worth 50ms of execution
    std::vector<AttemptRecord> attempts{make(AttemptClass::Terminated, 400, 300, 0),
                                        make(AttemptClass::PassedColdStart, 400, 300, 2000)};
    CostReport r = total_cost(attempts, params);
    CHECK(r.total_nano == 2800 + 100);
    CHECK(r.n_term == 1);
    CHECK(r.n_pass == 1);
    CHECK(r.billed_term_ms == 400);
    CHECK(r.billed_pass_ms == 2400);
}

TEST_CASE("zero attempts cost nothing") {
    CHECK(total_cost({}, CostParams{}).total_nano == 0);
}

TEST_CASE("per-invocation cost share vanishes for long functions") {
    CostParams params{1000, 50000, "small-128mb"};
    std::vector<AttemptRecord> attempts{
        make(AttemptClass::PassedColdStart, 400, 300, 100000)};
    CostReport r = total_cost(attempts, params);
    double inv_share = static_cast<double>(params.inv_nano) /
                       static_cast<double>(r.total_nano);
    CHECK(inv_share < 0.001);
}

TEST_CASE("with no terminations cost per million is the mean attempt cost scaled") {
    CostParams params{1000, 50000, "small-128mb"};
    std::vector<AttemptRecord> attempts;
    for (int i = 0; i < 10; ++i)
        attempts.push_back(make(AttemptClass::WarmReuse, 400, 0, 2000));
    CostReport r = total_cost(attempts, params);
    // Every attempt costs 2400*1000 + 50000 nano.
    CHECK(cost_per_million_successful(r, 10) == (2400 * 1000 + 50000) * 1000000LL);
}

TEST_CASE("zero successes are rejected") {
    CHECK_THROWS_AS(cost_per_million_successful(CostReport{}, 0), std::invalid_argument);
}

TEST_CASE("adding an attempt never decreases total cost") {
    RngStream r(31, "cost");
    CostParams params{1000, 50000, "small-128mb"};
    std::vector<AttemptRecord> attempts;
    Nano prev = 0;
    for (int i = 0; i < 500; ++i) {
        auto k = static_cast<AttemptClass>(r.bounded(3));
        attempts.push_back(make(k, 1 + static_cast<SimTime>(r.bounded(500)),
                                static_cast<SimTime>(r.bounded(400)),
                                k == AttemptClass::Terminated
                                    ? 0
                                    : static_cast<SimTime>(r.bounded(3000))));
        Nano now = total_cost(attempts, params).total_nano;
        CHECK(now >= prev);
        prev = now;
    }
}

// Rigged 50% per-attempt termination: terminations per success follow
// p(1-p^cap)/(1-p), and the cost numerator is inflated by exactly the
// terminated-attempt mass.
TEST_CASE("terminated attempts inflate the numerator by the closed-form factor") {
    auto cfg = test::churn_config();
    cfg.platform.perf_distribution = Distribution::constant(1.0);
    cfg.policy.benchmark_noise_sigma = 0.1;
    cfg.policy.threshold_mode = ThresholdMode::Fixed;
    cfg.policy.initial_threshold_ms = 3.0;  // median score => p = 0.5
    cfg.workload.vu_count = 1;
    cfg.workload.think_time_ms = 2;
    cfg.workload.duration_ms = 150000;

    RunSpec spec;
    spec.vu_count = 1;
    spec.duration_ms = cfg.workload.duration_ms;
    spec.mode = PolicyMode::Active;
    spec.threshold = ElysiumThreshold{3.0, 0.5};
    RunResult run = run_simulation(cfg, 777, spec);

    CostReport r = total_cost(run.trace, cfg.cost.to_params());
    double per_success = static_cast<double>(r.n_term) /
                         static_cast<double>(run.counters.completed);
    const double p = 0.5;
    double expected = p * (1.0 - std::pow(p, 5)) / (1.0 - p);  // 0.96875
    CHECK(per_success == doctest::Approx(expected).epsilon(0.05));

    // Inflation identity, exact in fixed point.
    Nano waste = cfg.cost.to_params().exec_nano_per_ms * r.billed_term_ms +
                 cfg.cost.to_params().inv_nano * static_cast<Nano>(r.n_term);
    Nano useful = cfg.cost.to_params().exec_nano_per_ms *
                      (r.billed_pass_ms + r.billed_reuse_ms) +
                  cfg.cost.to_params().inv_nano * static_cast<Nano>(r.n_pass + r.n_reuse);
    CHECK(r.total_nano == waste + useful);
}

TEST_CASE("a policy-off run degenerates to the plain billing equation") {
    auto cfg = test::small_config();
    cfg.policy.enabled = false;
    RunResult run = run_arm(cfg, 3, "baseline", ElysiumThreshold::pass_all());
    CostReport r = total_cost(run.trace, cfg.cost.to_params());
    CHECK(r.n_term == 0);
    CHECK(r.total_nano ==
          cfg.cost.to_params().exec_nano_per_ms * (r.billed_pass_ms + r.billed_reuse_ms) +
              cfg.cost.to_params().inv_nano * static_cast<Nano>(r.n_pass + r.n_reuse));
}
