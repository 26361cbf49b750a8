#pragma once

#include <stdexcept>
#include <string>

namespace minos {

// Raised for invalid experiment configuration. The CLI maps this to exit code 1.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised when a simulation invariant is violated. Always checked, never compiled
// out. The CLI maps this to exit code 2.
struct InvariantViolation : std::logic_error {
    explicit InvariantViolation(const std::string& msg) : std::logic_error(msg) {}
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw InvariantViolation(msg);
}

}  // namespace minos
