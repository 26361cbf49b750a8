#include "minos/policy.hpp"

#include <stdexcept>

namespace minos {

ElysiumThreshold calibrate_pretest(const std::vector<double>& scores, double pass_fraction) {
    if (scores.empty())
        throw std::invalid_argument("calibrate_pretest: empty calibration sample");
    if (!(pass_fraction > 0.0 && pass_fraction <= 1.0))
        throw std::invalid_argument("calibrate_pretest: pass_fraction must be in (0, 1]");
    return ElysiumThreshold{nearest_rank_quantile(scores, pass_fraction), pass_fraction};
}

PolicyEngine::PolicyEngine(const PolicyConfig& cfg, PolicyMode mode)
    : cfg_(cfg),
      mode_(mode),
      // P2 wants an open interval; pass_fraction 1.0 never reaches the
      // estimator because judging passes everything anyway.
      p2_(cfg.target_pass_fraction < 1.0 ? cfg.target_pass_fraction : 0.5) {
    if (cfg.initial_threshold_ms)
        threshold_ = ElysiumThreshold{*cfg.initial_threshold_ms, cfg.target_pass_fraction};
    else
        threshold_ = ElysiumThreshold::pass_all();
}

void PolicyEngine::observe(double score) {
    ++observed_;
    if (mode_ == PolicyMode::Active && cfg_.threshold_mode == ThresholdMode::Online) {
        welford_.update(score);
        p2_.update(score);
    }
}

bool PolicyEngine::online_tick() {
    if (cfg_.threshold_mode != ThresholdMode::Online || p2_.count() < 5) return false;
    double estimate = p2_.estimate();
    bool changed = estimate != threshold_.value;
    threshold_ = ElysiumThreshold{estimate, cfg_.target_pass_fraction};
    return changed;
}

}  // namespace minos
