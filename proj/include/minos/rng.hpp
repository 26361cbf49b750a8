#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace minos {

// Named, independently seeded random streams. Each stochastic concern of the
// simulation (node performance, placement, benchmark noise, phase durations)
// gets its own stream so that enabling or disabling the selection policy in
// one run cannot perturb the draws of another concern. Identical
// (seed, stream_id, draw sequence) always reproduces the same values: the
// engine is mt19937_64 (fully specified by the standard) and all sampling
// below avoids std::*_distribution, whose output is implementation-defined.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::string_view stream_id)
        : gen_(mix(seed, fnv1a64(stream_id))) {}

    std::uint64_t next_u64() { return gen_(); }

    // Uniform in [0, 1) with 53 bits of mantissa.
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n). n must be > 0.
    std::uint64_t bounded(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(gen_()) * n) >> 64);
    }

    // Standard normal via Box-Muller; no state is cached so the draw count per
    // call is fixed (two uniforms).
    double normal() {
        double u1 = 1.0 - uniform01();  // (0, 1], keeps log() finite
        double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.141592653589793 * u2);
    }

    // Lognormal parameterized by its median: median * exp(sigma * N(0,1)).
    double lognormal_median(double median, double sigma) {
        return median * std::exp(sigma * normal());
    }

    static constexpr std::uint64_t fnv1a64(std::string_view s) {
        std::uint64_t h = 1469598103934665603ull;
        for (char c : s) {
            h ^= static_cast<unsigned char>(c);
            h *= 1099511628211ull;
        }
        return h;
    }

private:
    static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream_hash) {
        return splitmix64(splitmix64(seed) ^ stream_hash);
    }

    static std::uint64_t splitmix64(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ull;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
        return x ^ (x >> 31);
    }

    std::mt19937_64 gen_;
};

}  // namespace minos
