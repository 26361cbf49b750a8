#include "minos/platform.hpp"

#include <algorithm>
#include <string>

#include "minos/errors.hpp"

namespace minos {

const char* to_string(InstanceState s) {
    switch (s) {
        case InstanceState::ColdStarting: return "cold-starting";
        case InstanceState::Benchmarking: return "benchmarking";
        case InstanceState::Busy: return "busy";
        case InstanceState::Warm: return "warm";
        case InstanceState::Terminated: return "terminated";
    }
    return "?";
}

Platform::Platform(const PlatformConfig& cfg, RngStream& perf_rng) : cfg_(cfg) {
    nodes_.reserve(cfg.node_pool_size);
    for (std::uint32_t i = 0; i < cfg.node_pool_size; ++i) {
        double perf = cfg.perf_distribution.sample(perf_rng);
        require(perf > 0.0, "node perf_factor must be > 0");
        nodes_.push_back(WorkerNode{i, perf, cfg.node_capacity, 0});
    }
}

std::uint64_t Platform::submit_new(std::uint32_t vu_id, SimTime now) {
    std::uint64_t id = invocations_.size();
    invocations_.push_back(Invocation{id, vu_id, now, now, 0, std::nullopt});
    queue_.push_back(id);
    return id;
}

std::optional<Platform::Assignment> Platform::try_assign(SimTime now,
                                                         RngStream& placement_rng) {
    if (queue_.empty()) return std::nullopt;
    std::uint64_t inv_id = queue_.front();

    // Warm reuse is strictly preferred over a cold start; pick the least
    // recently used warm instance.
    if (!warm_by_lru_.empty()) {
        auto it = warm_by_lru_.begin();
        std::uint32_t inst_id = it->second;
        warm_by_lru_.erase(it);
        queue_.pop_front();
        ++in_flight_;
        Instance& inst = instances_[inst_id];
        require(inst.state == InstanceState::Warm, "warm pick: instance not Warm");
        inst.state = InstanceState::Busy;
        return Assignment{inv_id, inst_id, true};
    }

    // Cold start on a node drawn uniformly among those with spare capacity.
    std::vector<std::uint32_t> eligible;
    eligible.reserve(nodes_.size());
    for (const auto& n : nodes_)
        if (n.live < n.capacity) eligible.push_back(n.node_id);
    if (eligible.empty()) return std::nullopt;  // saturated; head stays queued

    std::uint32_t node_id = eligible[placement_rng.bounded(eligible.size())];
    queue_.pop_front();
    ++in_flight_;
    Instance& inst = spawn_instance(node_id, now);
    return Assignment{inv_id, inst.instance_id, false};
}

Instance& Platform::spawn_instance(std::uint32_t node_id, SimTime now) {
    WorkerNode& n = nodes_[node_id];
    require(n.live < n.capacity, "node capacity exceeded on placement");
    ++n.live;
    std::uint32_t id = static_cast<std::uint32_t>(instances_.size());
    instances_.push_back(Instance{id, node_id, InstanceState::ColdStarting,
                                  JudgedStatus::Unjudged, now, now, 0, {}, false});
    return instances_.back();
}

void Platform::requeue(std::uint64_t invocation_id, SimTime now, std::uint32_t retry_cap) {
    Invocation& inv = invocations_[invocation_id];
    ++inv.retry_count;
    require(inv.retry_count <= retry_cap, "retry_count exceeded retry_cap");
    inv.queued_at = now;
    require(in_flight_ > 0, "requeue without in-flight invocation");
    --in_flight_;
    queue_.push_back(invocation_id);
}

void Platform::complete(std::uint64_t invocation_id, SimTime now) {
    Invocation& inv = invocations_[invocation_id];
    require(!inv.completed_at.has_value(), "invocation completed twice");
    inv.completed_at = now;
    require(in_flight_ > 0, "completion without in-flight invocation");
    --in_flight_;
    ++completed_;
}

void Platform::begin_benchmarking(std::uint32_t instance_id) {
    Instance& inst = instances_[instance_id];
    require(inst.state == InstanceState::ColdStarting,
            std::string("illegal transition to Benchmarking from ") + to_string(inst.state));
    inst.state = InstanceState::Benchmarking;
}

void Platform::begin_busy(std::uint32_t instance_id) {
    Instance& inst = instances_[instance_id];
    // ColdStarting -> Busy covers the exempt and policy-off paths, where no
    // benchmark runs.
    require(inst.state == InstanceState::ColdStarting ||
                inst.state == InstanceState::Benchmarking,
            std::string("illegal transition to Busy from ") + to_string(inst.state));
    inst.state = InstanceState::Busy;
}

void Platform::release_to_warm(std::uint32_t instance_id, SimTime now) {
    Instance& inst = instances_[instance_id];
    require(inst.state == InstanceState::Busy,
            std::string("illegal transition to Warm from ") + to_string(inst.state));
    inst.state = InstanceState::Warm;
    inst.last_used_at = now;
    ++inst.served;
    warm_by_lru_.insert({now, instance_id});
}

void Platform::free_slot(Instance& inst) {
    WorkerNode& n = nodes_[inst.node_id];
    require(n.live > 0, "node live count underflow");
    --n.live;
}

void Platform::crash(std::uint32_t instance_id) {
    Instance& inst = instances_[instance_id];
    if (inst.state == InstanceState::Terminated) return;  // absorbing
    require(inst.state == InstanceState::Benchmarking || inst.state == InstanceState::Busy,
            std::string("crash from illegal state ") + to_string(inst.state));
    inst.state = InstanceState::Terminated;
    free_slot(inst);
}

void Platform::expire_idle(std::uint32_t instance_id, SimTime now, SimTime idle_timeout_ms) {
    Instance& inst = instances_[instance_id];
    require(inst.state == InstanceState::Warm, "idle expiry on non-Warm instance");
    require(now - inst.last_used_at >= idle_timeout_ms, "idle expiry fired early");
    warm_by_lru_.erase({inst.last_used_at, instance_id});
    inst.state = InstanceState::Terminated;
    free_slot(inst);
}

void Platform::check_conservation() const {
    require(submitted() == completed_ + queue_.size() + in_flight_,
            "conservation violated: submitted != completed + queued + in-flight");
}

}  // namespace minos
