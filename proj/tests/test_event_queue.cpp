#include <doctest.h>

#include <vector>

#include "minos/event_queue.hpp"

using namespace minos;

TEST_CASE("event at the current instant is accepted and fires first") {
    EventQueue q;
    std::vector<int> order;
    q.schedule(0, EventKind::InvocationArrival, [&] { order.push_back(1); });
    q.schedule(5, EventKind::InvocationArrival, [&] { order.push_back(2); });
    CHECK(q.run_until(10) == 2);
    CHECK(order == std::vector<int>{1, 2});
    CHECK(q.now() == 10);
}

TEST_CASE("ties fire in scheduling order") {
    EventQueue q;
    std::vector<char> order;
    q.schedule(500, EventKind::VuThinkDone, [&] { order.push_back('A'); });
    q.schedule(500, EventKind::VuThinkDone, [&] { order.push_back('B'); });
    q.run_until(500);
    CHECK(order == std::vector<char>{'A', 'B'});
}

TEST_CASE("scheduling in the past fails loudly") {
    EventQueue q;
    q.schedule(20, EventKind::ExperimentEnd, [] {});
    q.run_until(20);
    CHECK_THROWS_AS(q.schedule(10, EventKind::ExperimentEnd, [] {}), std::logic_error);
}

TEST_CASE("run_until on an empty queue just advances the clock") {
    EventQueue q;
    CHECK(q.run_until(1000) == 0);
    CHECK(q.now() == 1000);
}

TEST_CASE("run_until includes the boundary instant") {
    EventQueue q;
    int fired = 0;
    for (SimTime t : {1, 2, 3}) q.schedule(t, EventKind::VuThinkDone, [&] { ++fired; });
    CHECK(q.run_until(2) == 2);
    CHECK(fired == 2);
    CHECK(q.pending() == 1);
}

TEST_CASE("cancel removes a pending event exactly once") {
    EventQueue q;
    int fired = 0;
    EventId id = q.schedule(5, EventKind::IdleTimeout, [&] { ++fired; });
    CHECK(q.cancel(id));
    CHECK_FALSE(q.cancel(id));
    q.run_until(10);
    CHECK(fired == 0);

    EventId id2 = q.schedule(15, EventKind::IdleTimeout, [&] { ++fired; });
    q.run_until(20);
    CHECK(fired == 1);
    CHECK_FALSE(q.cancel(id2));  // already fired
}

TEST_CASE("handlers may schedule follow-ups at the current instant") {
    EventQueue q;
    std::vector<int> order;
    q.schedule(7, EventKind::AttemptComplete, [&] {
        order.push_back(1);
        q.schedule(7, EventKind::VuThinkDone, [&] { order.push_back(2); });
    });
    q.run_until(7);
    CHECK(order == std::vector<int>{1, 2});
}

TEST_CASE("drain processes everything and leaves the clock at the last event") {
    EventQueue q;
    q.schedule(3, EventKind::VuThinkDone, [] {});
    q.schedule(9, EventKind::VuThinkDone, [] {});
    CHECK(q.drain() == 2);
    CHECK(q.now() == 9);
    CHECK(q.empty());
}

TEST_CASE("event log hook sees fire order") {
    EventQueue q;
    std::vector<SimTime> times;
    q.set_event_log_hook([&](SimTime at, std::uint64_t, EventKind) { times.push_back(at); });
    q.schedule(4, EventKind::VuThinkDone, [] {});
    q.schedule(2, EventKind::VuThinkDone, [] {});
    q.drain();
    CHECK(times == std::vector<SimTime>{2, 4});
}
