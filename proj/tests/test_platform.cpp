#include <doctest.h>

#include <set>
#include <vector>

#include "minos/errors.hpp"
#include "minos/platform.hpp"
#include "minos/rng.hpp"
#include "test_util.hpp"

using namespace minos;

namespace {

struct Fixture {
    PlatformConfig cfg;
    RngStream perf{1, "node_perf"};
    RngStream placement{1, "placement"};

    Fixture(std::uint32_t nodes = 4, std::uint32_t cap = 2) {
        cfg.node_pool_size = nodes;
        cfg.node_capacity = cap;
        cfg.perf_distribution = Distribution::constant(1.0);
    }
};

// Walks a cold instance through a full successful attempt.
std::uint32_t run_cold_to_warm(Platform& p, RngStream& placement, SimTime t) {
    auto a = p.try_assign(t, placement);
    REQUIRE(a.has_value());
    REQUIRE_FALSE(a->warm);
    p.begin_benchmarking(a->instance_id);
    p.begin_busy(a->instance_id);
    p.complete(a->invocation_id, t + 100);
    p.release_to_warm(a->instance_id, t + 100);
    return a->instance_id;
}

}  // namespace

TEST_CASE("an idle warm instance is assigned immediately, no cold start") {
    Fixture f;
    Platform p(f.cfg, f.perf);
    p.submit_new(0, 0);
    std::uint32_t warm_id = run_cold_to_warm(p, f.placement, 0);

    p.submit_new(0, 200);
    auto a = p.try_assign(200, f.placement);
    REQUIRE(a.has_value());
    CHECK(a->warm);
    CHECK(a->instance_id == warm_id);
    CHECK(p.instance(warm_id).state == InstanceState::Busy);
}

TEST_CASE("a saturated pool leaves the head queued until capacity frees") {
    Fixture f(1, 1);
    Platform p(f.cfg, f.perf);
    p.submit_new(0, 0);
    auto a = p.try_assign(0, f.placement);
    REQUIRE(a.has_value());
    p.submit_new(1, 0);
    CHECK_FALSE(p.try_assign(0, f.placement).has_value());
    CHECK(p.queued() == 1);

    // Crash frees the slot in the same virtual instant.
    p.begin_benchmarking(a->instance_id);
    p.requeue(a->invocation_id, 5, 5);
    p.crash(a->instance_id);
    CHECK(p.node(p.instance(a->instance_id).node_id).live == 0);
    CHECK(p.try_assign(5, f.placement).has_value());
}

TEST_CASE("re-queueing preserves the invocation id and bumps the retry count") {
    Fixture f;
    Platform p(f.cfg, f.perf);
    std::uint64_t id = p.submit_new(3, 0);
    auto a = p.try_assign(0, f.placement);
    p.begin_benchmarking(a->instance_id);
    p.requeue(id, 10, 5);
    p.crash(a->instance_id);
    CHECK(p.invocation(id).retry_count == 1);
    CHECK(p.invocation(id).queued_at == 10);
    CHECK(p.queued() == 1);
    auto b = p.try_assign(10, f.placement);
    REQUIRE(b.has_value());
    CHECK(b->invocation_id == id);
}

TEST_CASE("the retry cap is enforced on re-queue") {
    Fixture f;
    Platform p(f.cfg, f.perf);
    std::uint64_t id = p.submit_new(0, 0);
    for (int round = 0; round < 2; ++round) {
        auto a = p.try_assign(0, f.placement);
        p.begin_benchmarking(a->instance_id);
        if (round < 1) {
            p.requeue(id, 0, 1);
            p.crash(a->instance_id);
        } else {
            CHECK_THROWS_AS(p.requeue(id, 0, 1), InvariantViolation);
        }
    }
}

TEST_CASE("warm pick is least-recently-used") {
    Fixture f(8, 2);
    Platform p(f.cfg, f.perf);
    RngStream order_rng(9, "order");

    // Cold-start five instances first (no warm pool yet), then release them
    // warm with scrambled last-used stamps.
    std::vector<Platform::Assignment> assigned;
    for (int i = 0; i < 5; ++i) {
        p.submit_new(0, 0);
        auto a = p.try_assign(0, f.placement);
        REQUIRE(a.has_value());
        REQUIRE_FALSE(a->warm);
        p.begin_benchmarking(a->instance_id);
        p.begin_busy(a->instance_id);
        assigned.push_back(*a);
    }
    std::vector<std::pair<SimTime, std::uint32_t>> released;
    for (const auto& a : assigned) {
        SimTime done = 50 + static_cast<SimTime>(order_rng.bounded(1000)) * 3 +
                       static_cast<SimTime>(a.instance_id);
        p.complete(a.invocation_id, done);
        p.release_to_warm(a.instance_id, done);
        released.push_back({done, a.instance_id});
    }
    // Property: picks come back in last_used order regardless of release order.
    std::sort(released.begin(), released.end());
    for (const auto& [stamp, inst_id] : released) {
        p.submit_new(0, 5000);
        auto a = p.try_assign(5000, f.placement);
        REQUIRE(a.has_value());
        CHECK(a->warm);
        CHECK(a->instance_id == inst_id);
    }
}

TEST_CASE("idle expiry terminates a warm instance and frees its slot") {
    Fixture f;
    Platform p(f.cfg, f.perf);
    p.submit_new(0, 0);
    std::uint32_t id = run_cold_to_warm(p, f.placement, 900);  // warm at t=1000
    std::uint32_t node = p.instance(id).node_id;
    CHECK(p.node(node).live == 1);
    p.expire_idle(id, 61000, 60000);
    CHECK(p.instance(id).state == InstanceState::Terminated);
    CHECK(p.node(node).live == 0);
}

TEST_CASE("early or busy expiry attempts are rejected") {
    Fixture f;
    Platform p(f.cfg, f.perf);
    p.submit_new(0, 0);
    std::uint32_t id = run_cold_to_warm(p, f.placement, 0);  // warm at t=100
    CHECK_THROWS_AS(p.expire_idle(id, 50000, 60000), InvariantViolation);

    // Reuse resets the clock: after a pick the instance is Busy and immune.
    p.submit_new(0, 30000);
    auto a = p.try_assign(30000, f.placement);
    REQUIRE(a->warm);
    CHECK_THROWS_AS(p.expire_idle(id, 90000, 60000), InvariantViolation);
}

TEST_CASE("crashing an already-terminated instance is a no-op") {
    Fixture f;
    Platform p(f.cfg, f.perf);
    p.submit_new(0, 0);
    auto a = p.try_assign(0, f.placement);
    p.begin_benchmarking(a->instance_id);
    p.requeue(a->invocation_id, 1, 5);
    p.crash(a->instance_id);
    CHECK(p.instance(a->instance_id).state == InstanceState::Terminated);
    p.crash(a->instance_id);  // absorbing
    CHECK(p.instance(a->instance_id).state == InstanceState::Terminated);
}

TEST_CASE("conservation holds through a scripted lifecycle") {
    Fixture f;
    Platform p(f.cfg, f.perf);
    p.check_conservation();
    p.submit_new(0, 0);
    p.check_conservation();
    auto a = p.try_assign(0, f.placement);
    p.check_conservation();
    p.begin_benchmarking(a->instance_id);
    p.requeue(a->invocation_id, 3, 5);
    p.crash(a->instance_id);
    p.check_conservation();
    auto b = p.try_assign(3, f.placement);
    p.begin_benchmarking(b->instance_id);
    p.begin_busy(b->instance_id);
    p.complete(b->invocation_id, 10);
    p.release_to_warm(b->instance_id, 10);
    p.check_conservation();
    CHECK(p.submitted() == 1);
    CHECK(p.completed() == 1);
}

TEST_CASE("placement respects capacity and spreads over eligible nodes") {
    Fixture f(10, 1);
    Platform p(f.cfg, f.perf);
    std::set<std::uint32_t> used_nodes;
    for (int i = 0; i < 10; ++i) {
        p.submit_new(0, 0);
        auto a = p.try_assign(0, f.placement);
        REQUIRE(a.has_value());
        used_nodes.insert(p.instance(a->instance_id).node_id);
    }
    CHECK(used_nodes.size() == 10);  // capacity 1 forces all-distinct nodes
    p.submit_new(0, 0);
    CHECK_FALSE(p.try_assign(0, f.placement).has_value());
}

TEST_CASE("a zero-sigma perf distribution makes every node nominal") {
    PlatformConfig cfg;
    cfg.node_pool_size = 50;
    cfg.perf_distribution = Distribution::lognormal(1.0, 0.0);
    RngStream perf(4, "node_perf");
    Platform p(cfg, perf);
    for (const auto& n : p.nodes()) CHECK(n.perf_factor == 1.0);
}
