#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <set>
#include <vector>

#include "minos/config.hpp"
#include "minos/event_queue.hpp"
#include "minos/rng.hpp"

namespace minos {

struct WorkerNode {
    std::uint32_t node_id = 0;
    double perf_factor = 1.0;  // > 0; hidden from the workload, discoverable only by benchmarking
    std::uint32_t capacity = 1;
    std::uint32_t live = 0;  // instances currently occupying a slot
};

enum class InstanceState : std::uint8_t { ColdStarting, Benchmarking, Busy, Warm, Terminated };
enum class JudgedStatus : std::uint8_t { Unjudged, Passed, Exempt };

const char* to_string(InstanceState s);

struct Instance {
    std::uint32_t instance_id = 0;
    std::uint32_t node_id = 0;
    InstanceState state = InstanceState::ColdStarting;
    JudgedStatus judged = JudgedStatus::Unjudged;
    SimTime created_at = 0;
    SimTime last_used_at = 0;
    std::uint64_t served = 0;  // completed attempts
    // Pending idle-expiry event while Warm; managed by the simulation loop.
    EventId idle_timer{};
    bool has_idle_timer = false;
};

struct Invocation {
    std::uint64_t invocation_id = 0;
    std::uint32_t vu_id = 0;
    SimTime first_submitted_at = 0;
    SimTime queued_at = 0;  // last (re-)submission time
    std::uint32_t retry_count = 0;
    std::optional<SimTime> completed_at;
};

// Platform state: node pool, instances, the FIFO invocation queue, and the
// accounting counters behind the conservation invariant
//   submitted == completed + queued + in-flight
// which the simulation re-checks after every processed event. All transitions
// validate the instance state machine and node capacity.
class Platform {
public:
    Platform(const PlatformConfig& cfg, RngStream& perf_rng);

    struct Assignment {
        std::uint64_t invocation_id;
        std::uint32_t instance_id;
        bool warm;
    };

    // Fresh invocation joins the queue tail; returns its id.
    std::uint64_t submit_new(std::uint32_t vu_id, SimTime now);

    // Tries to serve the queue head: an idle Warm instance (least recently
    // used) is strictly preferred; otherwise a new instance is cold-started on
    // a node drawn uniformly among nodes with spare capacity. Returns nullopt
    // when the queue is empty or every node is full (the head stays queued).
    std::optional<Assignment> try_assign(SimTime now, RngStream& placement_rng);

    // Judging failed: retry_count bumps (capped), the invocation re-joins the
    // queue tail.
    void requeue(std::uint64_t invocation_id, SimTime now, std::uint32_t retry_cap);

    void complete(std::uint64_t invocation_id, SimTime now);

    // Instance transitions driven by the simulation.
    void begin_benchmarking(std::uint32_t instance_id);
    void begin_busy(std::uint32_t instance_id);
    void release_to_warm(std::uint32_t instance_id, SimTime now);
    void crash(std::uint32_t instance_id);              // no-op when already Terminated
    void expire_idle(std::uint32_t instance_id, SimTime now, SimTime idle_timeout_ms);

    void check_conservation() const;

    Instance& instance(std::uint32_t id) { return instances_[id]; }
    const Instance& instance(std::uint32_t id) const { return instances_[id]; }
    Invocation& invocation(std::uint64_t id) { return invocations_[id]; }
    const Invocation& invocation(std::uint64_t id) const { return invocations_[id]; }
    const WorkerNode& node(std::uint32_t id) const { return nodes_[id]; }
    const std::vector<WorkerNode>& nodes() const { return nodes_; }
    const std::vector<Instance>& instances() const { return instances_; }

    std::uint64_t submitted() const { return invocations_.size(); }
    std::uint64_t completed() const { return completed_; }
    std::uint64_t queued() const { return queue_.size(); }
    std::uint64_t in_flight() const { return in_flight_; }
    std::size_t warm_count() const { return warm_by_lru_.size(); }

private:
    Instance& spawn_instance(std::uint32_t node_id, SimTime now);
    void free_slot(Instance& inst);

    PlatformConfig cfg_;
    std::vector<WorkerNode> nodes_;
    std::vector<Instance> instances_;
    std::vector<Invocation> invocations_;  // indexed by invocation_id
    std::deque<std::uint64_t> queue_;
    std::set<std::pair<SimTime, std::uint32_t>> warm_by_lru_;  // (last_used_at, instance_id)
    std::uint64_t completed_ = 0;
    std::uint64_t in_flight_ = 0;
};

}  // namespace minos
