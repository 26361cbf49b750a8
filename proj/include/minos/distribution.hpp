#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "minos/json.hpp"

#include "minos/rng.hpp"

namespace minos {

// Configurable scalar distribution for durations and the node performance
// factor. Constant distributions (and sigma == 0) consume no random draws, so
// paired runs that differ only in stochastic knobs stay comparable.
struct Distribution {
    enum class Kind { Constant, Uniform, Normal, LogNormal, Exponential };

    Kind kind = Kind::Constant;
    double a = 0.0;  // constant: value; uniform: low; normal: mean; lognormal: median; exponential: mean
    double b = 0.0;  // uniform: high; normal/lognormal: sigma

    static Distribution constant(double v) { return {Kind::Constant, v, 0.0}; }
    static Distribution lognormal(double median, double sigma) {
        return {Kind::LogNormal, median, sigma};
    }
    static Distribution uniform(double lo, double hi) { return {Kind::Uniform, lo, hi}; }

    double sample(RngStream& rng) const {
        switch (kind) {
            case Kind::Constant: return a;
            case Kind::Uniform: return a + (b - a) * rng.uniform01();
            case Kind::Normal: return b == 0.0 ? a : a + b * rng.normal();
            case Kind::LogNormal: return b == 0.0 ? a : rng.lognormal_median(a, b);
            case Kind::Exponential: return -a * std::log(1.0 - rng.uniform01());
        }
        return a;
    }

    // Appends messages of the form "<key>: problem" to errors. When
    // strictly_positive is set the whole support must be > 0 (used for the
    // performance factor, which is never clamped); duration distributions are
    // validated leniently because samples are clamped at the sampling site.
    void validate(const std::string& key, bool strictly_positive,
                  std::vector<std::string>& errors) const;

    static const std::vector<std::string>& supported_names();
    static Distribution from_json(const nlohmann::json& j, const std::string& key,
                                  std::vector<std::string>& errors);
    nlohmann::json to_json() const;

    bool operator==(const Distribution&) const = default;
};

}  // namespace minos
