#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <utility>

#include "minos/errors.hpp"

namespace minos {

// Virtual time in milliseconds. The millisecond is also the billing unit, so
// nothing in the model needs sub-millisecond resolution.
using SimTime = std::int64_t;

enum class EventKind : std::uint8_t {
    InvocationArrival,
    ColdStartDone,
    BenchmarkComplete,
    BenchmarkJudge,
    AttemptComplete,
    IdleTimeout,
    VuThinkDone,
    OnlineTick,
    ExperimentEnd,
};

const char* to_string(EventKind k);

struct EventId {
    SimTime fire_at = 0;
    std::uint64_t seq = 0;
};

// Deterministic discrete-event engine. Events fire in (fire_at, seq) order,
// seq being the insertion counter, so ties are FIFO. Scheduling in the past
// fails loudly; handlers may schedule further events, including at the
// current instant.
class EventQueue {
public:
    SimTime now() const { return now_; }

    EventId schedule(SimTime fire_at, EventKind kind, std::function<void()> fn) {
        if (fire_at < now_)
            throw std::logic_error("schedule: fire_at " + std::to_string(fire_at) +
                                   " is in the past (now=" + std::to_string(now_) + ")");
        EventId id{fire_at, next_seq_++};
        queue_.emplace(std::pair{fire_at, id.seq}, Entry{kind, std::move(fn)});
        return id;
    }

    // Removes a pending event. Returns false if it already fired or was
    // cancelled before.
    bool cancel(EventId id) { return queue_.erase({id.fire_at, id.seq}) > 0; }

    // Processes every event with fire_at <= t_end, then advances the clock to
    // t_end. Returns the number of events processed.
    std::size_t run_until(SimTime t_end) {
        if (t_end < now_)
            throw std::logic_error("run_until: target precedes current time");
        std::size_t n = pump(t_end);
        now_ = t_end;
        return n;
    }

    // Processes events until the queue is empty; the clock stays at the last
    // fire time.
    std::size_t drain() { return pump(std::numeric_limits<SimTime>::max()); }

    bool empty() const { return queue_.empty(); }
    std::size_t pending() const { return queue_.size(); }

    // Invoked after each processed event; the simulation hangs its global
    // invariant checks here.
    void set_post_event_hook(std::function<void()> fn) { post_event_ = std::move(fn); }

    // Invoked before each event fires with (fire_at, seq, kind); used to
    // capture event traces for determinism checks.
    void set_event_log_hook(std::function<void(SimTime, std::uint64_t, EventKind)> fn) {
        log_ = std::move(fn);
    }

private:
    struct Entry {
        EventKind kind;
        std::function<void()> fn;
    };

    std::size_t pump(SimTime t_end) {
        std::size_t n = 0;
        while (!queue_.empty()) {
            auto it = queue_.begin();
            const auto [fire_at, seq] = it->first;
            if (fire_at > t_end) break;
            // Pop order must never regress; the map keeps this true, the check
            // stays on anyway.
            require(fire_at >= now_, "event queue: pop order regressed");
            require(std::pair{fire_at, seq} > last_popped_,
                    "event queue: (fire_at, seq) order violated");
            last_popped_ = {fire_at, seq};
            now_ = fire_at;
            Entry e = std::move(it->second);
            queue_.erase(it);
            if (log_) log_(fire_at, seq, e.kind);
            e.fn();
            ++n;
            if (post_event_) post_event_();
        }
        return n;
    }

    std::map<std::pair<SimTime, std::uint64_t>, Entry> queue_;
    SimTime now_ = 0;
    std::uint64_t next_seq_ = 0;
    std::pair<SimTime, std::uint64_t> last_popped_{-1, 0};
    std::function<void()> post_event_;
    std::function<void(SimTime, std::uint64_t, EventKind)> log_;
};

}  // namespace minos
