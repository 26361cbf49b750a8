#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace minos {

// Single-pass running mean and variance (Welford). Numerically stable; after
// n updates mean() equals the batch mean and variance() the batch sample
// variance up to floating-point tolerance.
struct WelfordState {
    std::uint64_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;  // sum of squared deviations from the running mean

    void update(double x) {
        ++count;
        double delta = x - mean;
        mean += delta / static_cast<double>(count);
        m2 += delta * (x - mean);
    }

    // Sample variance; undefined (throws) for count < 2.
    double variance() const;
};

// Streaming quantile estimation with the five-marker P-squared algorithm:
// constant memory, piecewise-parabolic marker adjustment with a linear
// fallback when the parabola would break marker ordering. The first five
// observations initialize the markers by sorting.
class P2Quantile {
public:
    explicit P2Quantile(double q);

    void update(double x);

    // Current estimate of the q-quantile; requires at least 5 observations.
    double estimate() const;

    std::uint64_t count() const { return n_; }
    double quantile() const { return q_; }

private:
    double parabolic(int i, double s) const;
    double linear(int i, int s) const;
    void check_markers() const;

    double q_;
    std::uint64_t n_ = 0;
    std::array<double, 5> heights_{};
    std::array<double, 5> positions_{};  // integer-valued, 1-based
    std::array<double, 5> desired_{};
    std::array<double, 5> increments_{};
    std::array<double, 5> init_buffer_{};
};

// Nearest-rank quantile: the value at 1-based rank ceil(q * n) of the sorted
// sample, q in (0, 1]. Copies and sorts its input.
double nearest_rank_quantile(std::vector<double> values, double q);

}  // namespace minos
