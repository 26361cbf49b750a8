#include "minos/simulation.hpp"

#include <algorithm>
#include <optional>

#include "minos/errors.hpp"
#include "minos/workload.hpp"

namespace minos {

const char* to_string(EventKind k) {
    switch (k) {
        case EventKind::InvocationArrival: return "invocation-arrival";
        case EventKind::ColdStartDone: return "cold-start-done";
        case EventKind::BenchmarkComplete: return "benchmark-complete";
        case EventKind::BenchmarkJudge: return "benchmark-judge";
        case EventKind::AttemptComplete: return "attempt-complete";
        case EventKind::IdleTimeout: return "instance-idle-timeout";
        case EventKind::VuThinkDone: return "vu-think-done";
        case EventKind::OnlineTick: return "online-tick";
        case EventKind::ExperimentEnd: return "experiment-end";
    }
    return "?";
}

namespace {

// Everything an in-flight attempt needs to be recorded; captured by value in
// the event closures so a record stays correct even as platform state moves on.
struct AttemptCtx {
    std::uint64_t invocation_id;
    std::uint32_t vu_id;
    std::uint32_t attempt_index;
    std::uint32_t instance_id;
    std::uint32_t node_id;
    double perf_factor;
    SimTime queued_at;
    SimTime prepare_ms = 0;
    SimTime benchmark_ms = 0;
    std::optional<double> benchmark_score;
    SimTime compute_ms = 0;
};

class Simulation {
public:
    Simulation(const ExperimentConfig& cfg, std::uint64_t seed, const RunSpec& spec)
        : cfg_(cfg),
          spec_(spec),
          perf_rng_(seed, "node_perf"),
          placement_rng_(seed, spec.stream_prefix + "placement"),
          noise_rng_(seed, spec.stream_prefix + "benchmark_noise"),
          prepare_rng_(seed, spec.stream_prefix + "prepare"),
          cold_rng_(seed, spec.stream_prefix + "cold_start"),
          platform_(cfg.platform, perf_rng_),
          policy_(cfg.policy, spec.mode),
          profile_(make_profile(cfg.workload, cfg.policy)) {
        policy_.set_threshold(spec.threshold);
    }

    RunResult run() {
        queue_.set_post_event_hook([this] { platform_.check_conservation(); });
        if (spec_.collect_event_log)
            queue_.set_event_log_hook([this](SimTime at, std::uint64_t seq, EventKind kind) {
                result_.event_log.push_back({at, seq, kind});
            });

        for (std::uint32_t vu = 0; vu < spec_.vu_count; ++vu)
            queue_.schedule(0, EventKind::InvocationArrival, [this, vu] { submit(vu); });
        queue_.schedule(spec_.duration_ms, EventKind::ExperimentEnd, [] {});
        if (spec_.mode == PolicyMode::Active &&
            cfg_.policy.threshold_mode == ThresholdMode::Online)
            schedule_online_tick(cfg_.policy.online_tick_period_ms);

        std::size_t n = queue_.run_until(spec_.duration_ms);
        n += queue_.drain();  // in-flight work finishes, warm instances expire

        require(platform_.queued() == 0 && platform_.in_flight() == 0,
                "run did not drain: invocations left behind");
        require(platform_.submitted() == platform_.completed(),
                "lost invocations: submitted != completed after drain");

        result_.counters.processed_events = n;
        result_.counters.submitted = platform_.submitted();
        result_.counters.completed = platform_.completed();
        for (const auto& node : platform_.nodes())
            result_.node_perf.push_back({node.node_id, node.perf_factor});
        result_.initial_threshold = spec_.threshold;
        result_.final_threshold = policy_.current_threshold();
        return std::move(result_);
    }

private:
    void submit(std::uint32_t vu) {
        platform_.submit_new(vu, queue_.now());
        pump_scheduler();
    }

    void pump_scheduler() {
        while (auto a = platform_.try_assign(queue_.now(), placement_rng_)) {
            Invocation& inv = platform_.invocation(a->invocation_id);
            Instance& inst = platform_.instance(a->instance_id);
            AttemptCtx ctx{inv.invocation_id, inv.vu_id,    inv.retry_count,
                           inst.instance_id,  inst.node_id, platform_.node(inst.node_id).perf_factor,
                           inv.queued_at};
            if (a->warm) {
                ++result_.counters.warm_reuses;
                // An instance serving a second invocation must have been judged
                // (or exempted) whenever benchmarking is on.
                if (policy_.benchmarks_cold_starts())
                    require(inst.judged != JudgedStatus::Unjudged,
                            "warm reuse of an unjudged instance");
                if (inst.has_idle_timer) {
                    queue_.cancel(inst.idle_timer);
                    inst.has_idle_timer = false;
                }
                start_attempt(ctx, /*cold=*/false);
            } else {
                ++result_.counters.cold_starts;
                SimTime delay = std::max<SimTime>(
                    0, std::llround(cfg_.platform.cold_start_delay_ms.sample(cold_rng_)));
                queue_.schedule(queue_.now() + delay, EventKind::ColdStartDone,
                                [this, ctx] { start_attempt(ctx, /*cold=*/true); });
            }
        }
    }

    void start_attempt(AttemptCtx ctx, bool cold) {
        const SimTime now = queue_.now();
        ctx.prepare_ms = profile_.sample_prepare(prepare_rng_);
        ctx.compute_ms = profile_.compute_duration(ctx.perf_factor);

        if (!cold) {
            schedule_completion(ctx, AttemptClass::WarmReuse,
                                now + ctx.prepare_ms + ctx.compute_ms);
            return;
        }
        if (!policy_.benchmarks_cold_starts()) {
            platform_.begin_busy(ctx.instance_id);
            schedule_completion(ctx, AttemptClass::PassedColdStart,
                                now + ctx.prepare_ms + ctx.compute_ms);
            return;
        }
        if (policy_.exempts(ctx.attempt_index)) {
            // Escape hatch: accepted as-is, no benchmark.
            ++result_.counters.exempt_passes;
            Instance& inst = platform_.instance(ctx.instance_id);
            inst.judged = JudgedStatus::Exempt;
            platform_.begin_busy(ctx.instance_id);
            schedule_completion(ctx, AttemptClass::PassedColdStart,
                                now + ctx.prepare_ms + ctx.compute_ms);
            return;
        }

        // Benchmark runs in parallel with prepare; the verdict applies when
        // both are done. The threshold is captured here, once per cold start.
        double score = profile_.benchmark_score(ctx.perf_factor, noise_rng_);
        ctx.benchmark_ms = FunctionProfile::benchmark_wall_ms(score);
        ctx.benchmark_score = score;
        ++result_.counters.benchmarks_run;
        platform_.begin_benchmarking(ctx.instance_id);
        ElysiumThreshold threshold = policy_.current_threshold();

        queue_.schedule(now + ctx.benchmark_ms, EventKind::BenchmarkComplete, [this, ctx] {
            policy_.observe(*ctx.benchmark_score);
            result_.observations.push_back(
                {ctx.instance_id, *ctx.benchmark_score, queue_.now()});
        });
        queue_.schedule(now + std::max(ctx.prepare_ms, ctx.benchmark_ms),
                        EventKind::BenchmarkJudge,
                        [this, ctx, threshold] { on_judge(ctx, threshold); });
    }

    void on_judge(AttemptCtx ctx, const ElysiumThreshold& threshold) {
        const SimTime now = queue_.now();
        if (policy_.judge_cold_start(*ctx.benchmark_score, threshold) == Judgement::Pass) {
            Instance& inst = platform_.instance(ctx.instance_id);
            inst.judged = JudgedStatus::Passed;
            platform_.begin_busy(ctx.instance_id);
            schedule_completion(ctx, AttemptClass::PassedColdStart, now + ctx.compute_ms);
            return;
        }
        // Failed: record the wasted attempt, re-queue the invocation, then the
        // instance takes itself down. Compute never ran.
        ++result_.counters.terminations;
        ctx.compute_ms = 0;
        record_attempt(ctx, AttemptClass::Terminated, now);
        platform_.requeue(ctx.invocation_id, now, cfg_.policy.retry_cap);
        platform_.crash(ctx.instance_id);
        pump_scheduler();
    }

    void schedule_completion(const AttemptCtx& ctx, AttemptClass klass, SimTime at) {
        queue_.schedule(at, EventKind::AttemptComplete,
                        [this, ctx, klass] { on_attempt_complete(ctx, klass); });
    }

    void on_attempt_complete(const AttemptCtx& ctx, AttemptClass klass) {
        const SimTime now = queue_.now();
        record_attempt(ctx, klass, now);
        platform_.complete(ctx.invocation_id, now);
        platform_.release_to_warm(ctx.instance_id, now);
        arm_idle_timer(ctx.instance_id);

        const std::uint32_t vu = ctx.vu_id;
        queue_.schedule(now + cfg_.workload.think_time_ms, EventKind::VuThinkDone,
                        [this, vu] {
                            if (queue_.now() < spec_.duration_ms) submit(vu);
                        });
        pump_scheduler();
    }

    void arm_idle_timer(std::uint32_t instance_id) {
        Instance& inst = platform_.instance(instance_id);
        inst.idle_timer = queue_.schedule(
            queue_.now() + cfg_.platform.idle_timeout_ms, EventKind::IdleTimeout,
            [this, instance_id] {
                platform_.instance(instance_id).has_idle_timer = false;
                platform_.expire_idle(instance_id, queue_.now(),
                                      cfg_.platform.idle_timeout_ms);
                pump_scheduler();
            });
        inst.has_idle_timer = true;
    }

    void record_attempt(const AttemptCtx& ctx, AttemptClass klass, SimTime completed_at) {
        AttemptRecord r;
        r.invocation_id = ctx.invocation_id;
        r.vu_id = ctx.vu_id;
        r.attempt_index = ctx.attempt_index;
        r.klass = klass;
        r.node_id = ctx.node_id;
        r.perf_factor = ctx.perf_factor;
        r.prepare_ms = ctx.prepare_ms;
        r.benchmark_ms = ctx.benchmark_ms;
        r.benchmark_score = ctx.benchmark_score;
        r.compute_ms = ctx.compute_ms;
        r.billed_ms = billed_ms(klass, ctx.prepare_ms, ctx.benchmark_ms, ctx.compute_ms);
        r.submitted_at = ctx.queued_at;
        r.completed_at = completed_at;
        result_.trace.push_back(r);
    }

    void schedule_online_tick(SimTime at) {
        if (at > spec_.duration_ms) return;  // updates only within the window
        queue_.schedule(at, EventKind::OnlineTick, [this, at] {
            policy_.online_tick();
            schedule_online_tick(at + cfg_.policy.online_tick_period_ms);
        });
    }

    ExperimentConfig cfg_;
    RunSpec spec_;
    EventQueue queue_;
    RngStream perf_rng_, placement_rng_, noise_rng_, prepare_rng_, cold_rng_;
    Platform platform_;
    PolicyEngine policy_;
    FunctionProfile profile_;
    RunResult result_;
};

}  // namespace

RunResult run_simulation(const ExperimentConfig& cfg, std::uint64_t seed, const RunSpec& spec) {
    return Simulation(cfg, seed, spec).run();
}

std::vector<double> run_pretest_scores(const ExperimentConfig& cfg, std::uint64_t seed) {
    RunSpec spec;
    spec.vu_count = cfg.workload.pretest_vu_count;
    spec.duration_ms = cfg.workload.pretest_duration_ms;
    spec.mode = PolicyMode::ObserveOnly;
    spec.stream_prefix = "pretest/";
    RunResult r = run_simulation(cfg, seed, spec);
    std::vector<double> scores;
    scores.reserve(r.observations.size());
    for (const auto& o : r.observations) scores.push_back(o.score);
    return scores;
}

ElysiumThreshold resolve_threshold(const ExperimentConfig& cfg, std::uint64_t seed) {
    const PolicyConfig& po = cfg.policy;
    if (!po.enabled) return ElysiumThreshold::pass_all();
    switch (po.threshold_mode) {
        case ThresholdMode::Fixed:
        case ThresholdMode::Online:
            if (po.initial_threshold_ms)
                return ElysiumThreshold{*po.initial_threshold_ms, po.target_pass_fraction};
            return ElysiumThreshold::pass_all();
        case ThresholdMode::PreTest: {
            auto scores = run_pretest_scores(cfg, seed);
            if (scores.empty())
                throw ConfigError(
                    "workload.pretest_duration_ms: pre-test collected zero benchmark scores");
            return calibrate_pretest(scores, po.target_pass_fraction);
        }
    }
    return ElysiumThreshold::pass_all();
}

}  // namespace minos
