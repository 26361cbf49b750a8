#include "minos/reporting.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "minos/errors.hpp"
#include "minos/stats.hpp"

namespace minos {

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

namespace {

double parse_double(const std::string& s) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw std::invalid_argument("bad numeric field: " + s);
    return v;
}

std::int64_t parse_i64(const std::string& s) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw std::invalid_argument("bad integer field: " + s);
    return v;
}

// Groups a trace by invocation. Records are appended at attempt end, so per
// invocation the attempt indices arrive in order.
struct InvocationView {
    SimTime first_submitted_at = 0;
    SimTime final_completed_at = 0;
    AttemptClass final_class = AttemptClass::Terminated;
    std::uint32_t attempts = 0;
    std::uint32_t max_attempt_index = 0;
    bool saw_first = false;
};

std::map<std::uint64_t, InvocationView> group_by_invocation(
    const std::vector<AttemptRecord>& trace) {
    std::map<std::uint64_t, InvocationView> by_inv;
    for (const auto& a : trace) {
        auto& v = by_inv[a.invocation_id];
        if (a.attempt_index == 0) {
            v.first_submitted_at = a.submitted_at;
            v.saw_first = true;
        }
        ++v.attempts;
        if (a.attempt_index >= v.max_attempt_index) {
            v.max_attempt_index = a.attempt_index;
            v.final_completed_at = a.completed_at;
            v.final_class = a.klass;
        }
    }
    return by_inv;
}

std::optional<double> mean_of(const std::vector<double>& xs) {
    if (xs.empty()) return std::nullopt;
    double sum = 0.0;
    for (double x : xs) sum += x;
    return sum / static_cast<double>(xs.size());
}

std::optional<double> median_of(const std::vector<double>& xs) {
    if (xs.empty()) return std::nullopt;
    return nearest_rank_quantile(xs, 0.5);
}

// Cheaper-than weight with the zero-successes-is-infinitely-expensive
// convention: 1 when the treatment is strictly cheaper, 0.5 on a tie.
double cheaper_weight(Nano t_cost, std::uint64_t t_succ, Nano b_cost, std::uint64_t b_succ) {
    if (t_succ == 0 && b_succ == 0) return 0.5;
    if (t_succ == 0) return 0.0;
    if (b_succ == 0) return 1.0;
    auto lhs = static_cast<__int128>(t_cost) * b_succ;
    auto rhs = static_cast<__int128>(b_cost) * t_succ;
    if (lhs < rhs) return 1.0;
    if (lhs == rhs) return 0.5;
    return 0.0;
}

ComparisonReport compare_series(const std::string& label, double base_mean_compute,
                                double treat_mean_compute, std::uint64_t base_succ,
                                std::uint64_t treat_succ, std::optional<Nano> base_cpm,
                                std::optional<Nano> treat_cpm, const CostSeries& base,
                                const CostSeries& treat) {
    if (base.size() != treat.size() || base.sample_period_ms != treat.sample_period_ms)
        throw std::invalid_argument("compare: cost series do not line up");
    ComparisonReport r;
    r.label = label;
    r.compute_speedup_pct =
        (base_mean_compute - treat_mean_compute) / base_mean_compute * 100.0;
    if (base_succ == 0) throw std::invalid_argument("compare: baseline has zero successes");
    r.success_delta_pct = (static_cast<double>(treat_succ) - static_cast<double>(base_succ)) /
                          static_cast<double>(base_succ) * 100.0;
    if (!base_cpm || !treat_cpm)
        throw std::invalid_argument("compare: cost per success undefined");
    r.cost_delta_pct = (static_cast<double>(*treat_cpm) - static_cast<double>(*base_cpm)) /
                       static_cast<double>(*base_cpm) * 100.0;

    double cheap = 0.0;
    for (std::size_t i = 0; i < base.size(); ++i)
        cheap += cheaper_weight(treat.cumulative_cost[i], treat.cumulative_successes[i],
                                base.cumulative_cost[i], base.cumulative_successes[i]);
    r.fraction_of_time_cheaper = base.size() ? cheap / static_cast<double>(base.size()) : 0.0;

    // Longest suffix on which the treatment stays strictly cheaper.
    std::optional<std::size_t> suffix_start;
    for (std::size_t i = base.size(); i-- > 0;) {
        double w = cheaper_weight(treat.cumulative_cost[i], treat.cumulative_successes[i],
                                  base.cumulative_cost[i], base.cumulative_successes[i]);
        if (w == 1.0)
            suffix_start = i;
        else
            break;
    }
    if (suffix_start)
        r.crossover_time_ms = static_cast<SimTime>(*suffix_start) * base.sample_period_ms;
    return r;
}

}  // namespace

RunSummary summarize(const std::vector<AttemptRecord>& trace, const SummarizeInputs& in) {
    if (trace.empty()) throw std::invalid_argument("summarize: empty trace");

    RunSummary s;
    s.mode = in.mode;
    s.seed = in.seed;
    s.duration_ms = in.duration_ms;
    s.cost_params = in.cost_params;
    s.retry_cap = in.retry_cap;
    s.threshold_value = in.threshold_value;
    s.target_pass_fraction = in.target_pass_fraction;
    s.config_echo = in.config_echo;

    auto by_inv = group_by_invocation(trace);

    std::vector<double> compute_samples;
    for (const auto& a : trace) {
        if (a.compute_ms > 0 && a.completed_at <= in.duration_ms)
            compute_samples.push_back(static_cast<double>(a.compute_ms));
        if (a.klass == AttemptClass::Terminated) ++s.termination_count;
    }
    s.compute_sample_count = compute_samples.size();
    s.mean_compute_ms = mean_of(compute_samples);
    s.median_compute_ms = median_of(compute_samples);

    std::vector<double> e2e_samples;
    s.retry_histogram.assign(in.retry_cap + 1, 0);
    for (const auto& [id, v] : by_inv) {
        require(v.saw_first, "trace missing attempt 0 for an invocation");
        if (v.max_attempt_index < s.retry_histogram.size())
            ++s.retry_histogram[v.max_attempt_index];
        bool success = v.final_class != AttemptClass::Terminated &&
                       v.final_completed_at <= in.duration_ms;
        if (success) {
            ++s.successful_requests;
            e2e_samples.push_back(
                static_cast<double>(v.final_completed_at - v.first_submitted_at));
        }
    }
    s.mean_end_to_end_ms = mean_of(e2e_samples);
    s.median_end_to_end_ms = median_of(e2e_samples);

    s.cost = total_cost(trace, in.cost_params);
    if (s.successful_requests > 0)
        s.cost_per_million = cost_per_million_successful(s.cost, s.successful_requests);

    // Cumulative series. Attempt cost accrues at the attempt's end; the trace
    // is ordered by end time.
    std::size_t samples = static_cast<std::size_t>(in.duration_ms / in.sample_period_ms) + 1;
    s.series.sample_period_ms = in.sample_period_ms;
    s.series.cumulative_cost.assign(samples, 0);
    s.series.cumulative_successes.assign(samples, 0);
    for (const auto& a : trace) {
        if (a.completed_at > in.duration_ms) continue;
        auto bucket = static_cast<std::size_t>(a.completed_at / in.sample_period_ms);
        if (a.completed_at % in.sample_period_ms != 0) ++bucket;  // visible at next sample
        if (bucket >= samples) continue;
        s.series.cumulative_cost[bucket] +=
            in.cost_params.exec_nano_per_ms * a.billed_ms + in.cost_params.inv_nano;
    }
    for (const auto& [id, v] : by_inv) {
        if (v.final_class == AttemptClass::Terminated || v.final_completed_at > in.duration_ms)
            continue;
        auto bucket = static_cast<std::size_t>(v.final_completed_at / in.sample_period_ms);
        if (v.final_completed_at % in.sample_period_ms != 0) ++bucket;
        if (bucket >= samples) continue;
        ++s.series.cumulative_successes[bucket];
    }
    for (std::size_t i = 1; i < samples; ++i) {
        s.series.cumulative_cost[i] += s.series.cumulative_cost[i - 1];
        s.series.cumulative_successes[i] += s.series.cumulative_successes[i - 1];
    }
    return s;
}

ComparisonReport compare(const RunSummary& baseline, const RunSummary& treatment) {
    if (baseline.seed != treatment.seed)
        throw std::invalid_argument("compare: summaries come from different seeds");
    auto subtree = [](const RunSummary& s, const char* part) {
        return s.config_echo.is_object() ? s.config_echo.value(part, nlohmann::json{})
                                         : nlohmann::json{};
    };
    // Policy knobs legitimately differ between arms; everything else must match.
    for (const char* part : {"platform", "workload", "cost"}) {
        if (subtree(baseline, part) != subtree(treatment, part))
            throw std::invalid_argument(std::string("compare: mismatched ") + part +
                                        " configuration");
    }
    if (!baseline.mean_compute_ms || !treatment.mean_compute_ms)
        throw std::invalid_argument("compare: compute statistics undefined");
    return compare_series(std::to_string(baseline.seed), *baseline.mean_compute_ms,
                          *treatment.mean_compute_ms, baseline.successful_requests,
                          treatment.successful_requests, baseline.cost_per_million,
                          treatment.cost_per_million, baseline.series, treatment.series);
}

ComparisonReport compare_pooled(const std::vector<RunSummary>& baselines,
                                const std::vector<RunSummary>& treatments) {
    if (baselines.empty() || baselines.size() != treatments.size())
        throw std::invalid_argument("compare_pooled: need matching non-empty summary lists");

    auto pooled_series = [](const std::vector<RunSummary>& ss) {
        CostSeries out = ss.front().series;
        for (std::size_t k = 1; k < ss.size(); ++k) {
            const CostSeries& s = ss[k].series;
            if (s.size() != out.size() || s.sample_period_ms != out.sample_period_ms)
                throw std::invalid_argument("compare_pooled: series do not line up");
            for (std::size_t i = 0; i < out.size(); ++i) {
                out.cumulative_cost[i] += s.cumulative_cost[i];
                out.cumulative_successes[i] += s.cumulative_successes[i];
            }
        }
        return out;
    };
    auto pooled_mean_compute = [](const std::vector<RunSummary>& ss) {
        double weighted = 0.0;
        std::uint64_t n = 0;
        for (const auto& s : ss) {
            if (!s.mean_compute_ms) continue;
            weighted += *s.mean_compute_ms * static_cast<double>(s.compute_sample_count);
            n += s.compute_sample_count;
        }
        if (n == 0) throw std::invalid_argument("compare_pooled: no compute samples");
        return weighted / static_cast<double>(n);
    };
    auto totals = [](const std::vector<RunSummary>& ss) {
        Nano cost = 0;
        std::uint64_t succ = 0;
        for (const auto& s : ss) {
            cost += s.cost.total_nano;
            succ += s.successful_requests;
        }
        return std::pair{cost, succ};
    };

    auto [b_cost, b_succ] = totals(baselines);
    auto [t_cost, t_succ] = totals(treatments);
    CostReport b_report, t_report;
    b_report.total_nano = b_cost;
    t_report.total_nano = t_cost;
    std::optional<Nano> b_cpm, t_cpm;
    if (b_succ > 0) b_cpm = cost_per_million_successful(b_report, b_succ);
    if (t_succ > 0) t_cpm = cost_per_million_successful(t_report, t_succ);

    return compare_series("all", pooled_mean_compute(baselines),
                          pooled_mean_compute(treatments), b_succ, t_succ, b_cpm, t_cpm,
                          pooled_series(baselines), pooled_series(treatments));
}

std::vector<std::string> verify_run(const std::vector<AttemptRecord>& trace,
                                    const RunSummary& summary) {
    std::vector<std::string> problems;
    auto bad = [&](const std::string& msg) { problems.push_back(msg); };

    // Billing re-derived from the raw phase columns, spelled out rather than
    // shared with the cost module so this stays an independent route.
    Nano resum_total = 0;
    SimTime term_ms = 0, pass_ms = 0, reuse_ms = 0;
    std::uint64_t n_term = 0, n_pass = 0, n_reuse = 0;
    for (std::size_t i = 0; i < trace.size(); ++i) {
        const auto& a = trace[i];
        SimTime expect_billed = 0;
        switch (a.klass) {
            case AttemptClass::Terminated:
                expect_billed = a.prepare_ms > a.benchmark_ms ? a.prepare_ms : a.benchmark_ms;
                ++n_term;
                term_ms += expect_billed;
                if (a.compute_ms != 0)
                    bad("row " + std::to_string(i) + ": terminated attempt ran compute");
                break;
            case AttemptClass::PassedColdStart:
                expect_billed =
                    (a.prepare_ms > a.benchmark_ms ? a.prepare_ms : a.benchmark_ms) +
                    a.compute_ms;
                ++n_pass;
                pass_ms += expect_billed;
                break;
            case AttemptClass::WarmReuse:
                expect_billed = a.prepare_ms + a.compute_ms;
                ++n_reuse;
                reuse_ms += expect_billed;
                if (a.benchmark_ms != 0)
                    bad("row " + std::to_string(i) + ": warm reuse ran a benchmark");
                break;
        }
        if (a.billed_ms != expect_billed)
            bad("row " + std::to_string(i) + ": billed_ms " + std::to_string(a.billed_ms) +
                " != re-derived " + std::to_string(expect_billed));
        if (a.completed_at < a.submitted_at)
            bad("row " + std::to_string(i) + ": completed before submitted");
    }
    resum_total = summary.cost_params.exec_nano_per_ms * (term_ms + pass_ms + reuse_ms) +
                  summary.cost_params.inv_nano * static_cast<Nano>(n_term + n_pass + n_reuse);

    if (resum_total != summary.cost.total_nano)
        bad("cost equation: re-summed total " + std::to_string(resum_total) +
            " != reported " + std::to_string(summary.cost.total_nano));
    if (n_term != summary.cost.n_term || n_pass != summary.cost.n_pass ||
        n_reuse != summary.cost.n_reuse)
        bad("cost equation: attempt class counts disagree");
    if (term_ms != summary.cost.billed_term_ms || pass_ms != summary.cost.billed_pass_ms ||
        reuse_ms != summary.cost.billed_reuse_ms)
        bad("cost equation: per-class billed milliseconds disagree");

    // Per-invocation attempt structure: contiguous attempt indices, only the
    // final attempt completes, retries within the cap.
    std::map<std::uint64_t, std::vector<const AttemptRecord*>> by_inv;
    for (const auto& a : trace) by_inv[a.invocation_id].push_back(&a);
    std::uint64_t successes = 0;
    std::uint64_t terminations_from_retries = 0;
    for (auto& [id, rows] : by_inv) {
        std::sort(rows.begin(), rows.end(),
                  [](auto* x, auto* y) { return x->attempt_index < y->attempt_index; });
        for (std::size_t k = 0; k < rows.size(); ++k) {
            if (rows[k]->attempt_index != k)
                bad("invocation " + std::to_string(id) + ": attempt indices not contiguous");
            bool last = k + 1 == rows.size();
            if (!last && rows[k]->klass != AttemptClass::Terminated)
                bad("invocation " + std::to_string(id) + ": non-final attempt completed");
            if (last && rows[k]->klass == AttemptClass::Terminated)
                bad("invocation " + std::to_string(id) + ": final attempt terminated");
        }
        std::uint32_t retries = rows.back()->attempt_index;
        if (retries > summary.retry_cap)
            bad("invocation " + std::to_string(id) + ": retries exceed retry_cap");
        terminations_from_retries += retries;
        if (rows.back()->klass != AttemptClass::Terminated &&
            rows.back()->completed_at <= summary.duration_ms)
            ++successes;
    }
    if (terminations_from_retries != summary.termination_count)
        bad("retry histogram: total re-queues != termination count");
    if (successes != summary.successful_requests)
        bad("successful_requests: recount " + std::to_string(successes) + " != reported " +
            std::to_string(summary.successful_requests));
    if (summary.successful_requests > 0) {
        CostReport r;
        r.total_nano = resum_total;
        Nano cpm = cost_per_million_successful(r, successes);
        if (!summary.cost_per_million || *summary.cost_per_million != cpm)
            bad("cost_per_million: recount disagrees");
    }

    // Full re-summarization must reproduce the summary bit for bit.
    SummarizeInputs in{summary.mode,          summary.seed,
                       summary.duration_ms,   summary.cost_params,
                       summary.retry_cap,     summary.threshold_value,
                       summary.target_pass_fraction, summary.config_echo,
                       summary.series.sample_period_ms};
    RunSummary redo = summarize(trace, in);
    if (redo.mean_compute_ms != summary.mean_compute_ms ||
        redo.median_compute_ms != summary.median_compute_ms ||
        redo.mean_end_to_end_ms != summary.mean_end_to_end_ms ||
        redo.median_end_to_end_ms != summary.median_end_to_end_ms)
        bad("summary statistics: re-summarization disagrees");
    if (redo.retry_histogram != summary.retry_histogram)
        bad("retry histogram: re-summarization disagrees");
    if (redo.series.cumulative_cost != summary.series.cumulative_cost ||
        redo.series.cumulative_successes != summary.series.cumulative_successes)
        bad("cost series: re-summarization disagrees");
    return problems;
}

std::string trace_to_csv(const std::vector<AttemptRecord>& trace) {
    std::ostringstream out;
    out << "invocation_id,vu_id,attempt_index,classification,node_id,perf_factor,"
           "prepare_ms,benchmark_ms,benchmark_score,compute_ms,billed_ms,"
           "submitted_at,completed_at\n";
    for (const auto& a : trace) {
        out << a.invocation_id << ',' << a.vu_id << ',' << a.attempt_index << ','
            << to_string(a.klass) << ',' << a.node_id << ',' << format_double(a.perf_factor)
            << ',' << a.prepare_ms << ',' << a.benchmark_ms << ','
            << (a.benchmark_score ? format_double(*a.benchmark_score) : "") << ','
            << a.compute_ms << ',' << a.billed_ms << ',' << a.submitted_at << ','
            << a.completed_at << '\n';
    }
    return out.str();
}

std::vector<AttemptRecord> trace_from_csv(const std::string& csv) {
    std::vector<AttemptRecord> trace;
    std::istringstream in(csv);
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("trace csv: empty input");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::string field;
        std::istringstream ls(line);
        while (std::getline(ls, field, ',')) f.push_back(field);
        if (line.back() == ',') f.push_back("");
        if (f.size() != 13)
            throw std::invalid_argument("trace csv: expected 13 fields, got " +
                                        std::to_string(f.size()));
        AttemptRecord a;
        a.invocation_id = static_cast<std::uint64_t>(parse_i64(f[0]));
        a.vu_id = static_cast<std::uint32_t>(parse_i64(f[1]));
        a.attempt_index = static_cast<std::uint32_t>(parse_i64(f[2]));
        a.klass = attempt_class_from_string(f[3]);
        a.node_id = static_cast<std::uint32_t>(parse_i64(f[4]));
        a.perf_factor = parse_double(f[5]);
        a.prepare_ms = parse_i64(f[6]);
        a.benchmark_ms = parse_i64(f[7]);
        if (!f[8].empty()) a.benchmark_score = parse_double(f[8]);
        a.compute_ms = parse_i64(f[9]);
        a.billed_ms = parse_i64(f[10]);
        a.submitted_at = parse_i64(f[11]);
        a.completed_at = parse_i64(f[12]);
        trace.push_back(a);
    }
    return trace;
}

namespace {

nlohmann::json opt_to_json(const std::optional<double>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

std::optional<double> opt_from_json(const nlohmann::json& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<double>();
}

}  // namespace

nlohmann::json summary_to_json(const RunSummary& s) {
    nlohmann::json j;
    j["mode"] = s.mode;
    j["seed"] = s.seed;
    j["successful_requests"] = s.successful_requests;
    j["mean_compute_ms"] = opt_to_json(s.mean_compute_ms);
    j["median_compute_ms"] = opt_to_json(s.median_compute_ms);
    j["mean_end_to_end_ms"] = opt_to_json(s.mean_end_to_end_ms);
    j["median_end_to_end_ms"] = opt_to_json(s.median_end_to_end_ms);
    j["termination_count"] = s.termination_count;
    j["retry_histogram"] = s.retry_histogram;
    j["cost"] = {{"total_nano", s.cost.total_nano},
                 {"n_term", s.cost.n_term},
                 {"n_pass", s.cost.n_pass},
                 {"n_reuse", s.cost.n_reuse},
                 {"billed_term_ms", s.cost.billed_term_ms},
                 {"billed_pass_ms", s.cost.billed_pass_ms},
                 {"billed_reuse_ms", s.cost.billed_reuse_ms}};
    j["cost_per_million"] =
        s.cost_per_million ? nlohmann::json(*s.cost_per_million) : nlohmann::json(nullptr);
    nlohmann::json ratios = nlohmann::json::array();
    for (std::size_t i = 0; i < s.series.size(); ++i)
        ratios.push_back(opt_to_json(s.series.ratio_at(i)));
    j["series"] = {{"sample_period_ms", s.series.sample_period_ms},
                   {"cumulative_cost_nano", s.series.cumulative_cost},
                   {"cumulative_successes", s.series.cumulative_successes},
                   {"cost_per_success_nano", ratios}};
    j["duration_ms"] = s.duration_ms;
    j["cost_params"] = {{"exec_nano_per_ms", s.cost_params.exec_nano_per_ms},
                        {"inv_nano", s.cost_params.inv_nano},
                        {"memory_tier", s.cost_params.memory_tier}};
    j["retry_cap"] = s.retry_cap;
    j["compute_sample_count"] = s.compute_sample_count;
    j["threshold"] = {{"value_ms", std::isinf(s.threshold_value)
                                       ? nlohmann::json(nullptr)
                                       : nlohmann::json(s.threshold_value)},
                      {"target_pass_fraction", s.target_pass_fraction}};
    j["config"] = s.config_echo;
    return j;
}

RunSummary summary_from_json(const nlohmann::json& j) {
    RunSummary s;
    s.mode = j.at("mode").get<std::string>();
    s.seed = j.at("seed").get<std::uint64_t>();
    s.successful_requests = j.at("successful_requests").get<std::uint64_t>();
    s.mean_compute_ms = opt_from_json(j.at("mean_compute_ms"));
    s.median_compute_ms = opt_from_json(j.at("median_compute_ms"));
    s.mean_end_to_end_ms = opt_from_json(j.at("mean_end_to_end_ms"));
    s.median_end_to_end_ms = opt_from_json(j.at("median_end_to_end_ms"));
    s.termination_count = j.at("termination_count").get<std::uint64_t>();
    s.retry_histogram = j.at("retry_histogram").get<std::vector<std::uint64_t>>();
    const auto& c = j.at("cost");
    s.cost.total_nano = c.at("total_nano").get<Nano>();
    s.cost.n_term = c.at("n_term").get<std::uint64_t>();
    s.cost.n_pass = c.at("n_pass").get<std::uint64_t>();
    s.cost.n_reuse = c.at("n_reuse").get<std::uint64_t>();
    s.cost.billed_term_ms = c.at("billed_term_ms").get<SimTime>();
    s.cost.billed_pass_ms = c.at("billed_pass_ms").get<SimTime>();
    s.cost.billed_reuse_ms = c.at("billed_reuse_ms").get<SimTime>();
    if (!j.at("cost_per_million").is_null())
        s.cost_per_million = j.at("cost_per_million").get<Nano>();
    const auto& series = j.at("series");
    s.series.sample_period_ms = series.at("sample_period_ms").get<SimTime>();
    s.series.cumulative_cost = series.at("cumulative_cost_nano").get<std::vector<Nano>>();
    s.series.cumulative_successes =
        series.at("cumulative_successes").get<std::vector<std::uint64_t>>();
    s.duration_ms = j.at("duration_ms").get<SimTime>();
    const auto& cp = j.at("cost_params");
    s.cost_params.exec_nano_per_ms = cp.at("exec_nano_per_ms").get<Nano>();
    s.cost_params.inv_nano = cp.at("inv_nano").get<Nano>();
    s.cost_params.memory_tier = cp.at("memory_tier").get<std::string>();
    s.retry_cap = j.at("retry_cap").get<std::uint32_t>();
    s.compute_sample_count = j.at("compute_sample_count").get<std::uint64_t>();
    const auto& thr = j.at("threshold");
    s.threshold_value = thr.at("value_ms").is_null()
                            ? std::numeric_limits<double>::infinity()
                            : thr.at("value_ms").get<double>();
    s.target_pass_fraction = thr.at("target_pass_fraction").get<double>();
    s.config_echo = j.value("config", nlohmann::json{});
    return s;
}

std::string comparison_to_csv(const std::vector<ComparisonReport>& rows) {
    std::ostringstream out;
    out << "seed,compute_speedup_pct,success_delta_pct,cost_delta_pct,"
           "crossover_time_ms,fraction_of_time_cheaper\n";
    for (const auto& r : rows) {
        out << r.label << ',' << format_double(r.compute_speedup_pct) << ','
            << format_double(r.success_delta_pct) << ',' << format_double(r.cost_delta_pct)
            << ',' << (r.crossover_time_ms ? std::to_string(*r.crossover_time_ms) : "") << ','
            << format_double(r.fraction_of_time_cheaper) << '\n';
    }
    return out.str();
}

std::string timeseries_to_csv(const CostSeries& baseline, const CostSeries& treatment) {
    if (baseline.size() != treatment.size() ||
        baseline.sample_period_ms != treatment.sample_period_ms)
        throw std::invalid_argument("timeseries: series do not line up");
    std::ostringstream out;
    out << "t_sec,baseline_cost_per_success,minos_cost_per_success\n";
    for (std::size_t i = 0; i < baseline.size(); ++i) {
        auto b = baseline.ratio_at(i);
        auto t = treatment.ratio_at(i);
        out << (static_cast<SimTime>(i) * baseline.sample_period_ms) / 1000 << ','
            << (b ? format_double(*b) : "") << ',' << (t ? format_double(*t) : "") << '\n';
    }
    return out.str();
}

}  // namespace minos
