#include "minos/cost.hpp"

#include <algorithm>
#include <stdexcept>

#include "minos/errors.hpp"

namespace minos {

const char* to_string(AttemptClass c) {
    switch (c) {
        case AttemptClass::Terminated: return "term";
        case AttemptClass::PassedColdStart: return "pass";
        case AttemptClass::WarmReuse: return "reuse";
    }
    return "?";
}

AttemptClass attempt_class_from_string(const std::string& s) {
    if (s == "term") return AttemptClass::Terminated;
    if (s == "pass") return AttemptClass::PassedColdStart;
    if (s == "reuse") return AttemptClass::WarmReuse;
    throw std::invalid_argument("unknown attempt classification: " + s);
}

SimTime billed_ms(AttemptClass klass, SimTime prepare_ms, SimTime benchmark_ms,
                  SimTime compute_ms) {
    switch (klass) {
        case AttemptClass::Terminated:
            return std::max(prepare_ms, benchmark_ms);
        case AttemptClass::PassedColdStart:
            return std::max(prepare_ms, benchmark_ms) + compute_ms;
        case AttemptClass::WarmReuse:
            return prepare_ms + compute_ms;
    }
    return 0;
}

CostReport total_cost(std::span<const AttemptRecord> attempts, const CostParams& params) {
    CostReport r;
    for (const auto& a : attempts) {
        switch (a.klass) {
            case AttemptClass::Terminated:
                ++r.n_term;
                r.billed_term_ms += a.billed_ms;
                break;
            case AttemptClass::PassedColdStart:
                ++r.n_pass;
                r.billed_pass_ms += a.billed_ms;
                break;
            case AttemptClass::WarmReuse:
                ++r.n_reuse;
                r.billed_reuse_ms += a.billed_ms;
                break;
        }
    }
    r.total_nano = params.exec_nano_per_ms * r.billed_total_ms() +
                   params.inv_nano * static_cast<Nano>(r.attempt_count());
    return r;
}

Nano cost_per_million_successful(const CostReport& report, std::uint64_t successful) {
    if (successful == 0)
        throw std::invalid_argument("cost_per_million_successful: zero successful invocations");
    auto scaled = static_cast<__int128>(report.total_nano) * 1000000;
    return static_cast<Nano>(scaled / static_cast<__int128>(successful));
}

}  // namespace minos
