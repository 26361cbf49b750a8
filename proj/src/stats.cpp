#include "minos/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "minos/errors.hpp"

namespace minos {

double WelfordState::variance() const {
    if (count < 2) throw std::logic_error("variance undefined for fewer than 2 values");
    return m2 / static_cast<double>(count - 1);
}

P2Quantile::P2Quantile(double q) : q_(q) {
    if (!(q > 0.0 && q < 1.0))
        throw std::invalid_argument("P2Quantile: quantile must be in (0,1)");
    increments_ = {0.0, q / 2.0, q, (1.0 + q) / 2.0, 1.0};
}

void P2Quantile::update(double x) {
    if (n_ < 5) {
        init_buffer_[n_++] = x;
        if (n_ == 5) {
            std::sort(init_buffer_.begin(), init_buffer_.end());
            for (int i = 0; i < 5; ++i) {
                heights_[i] = init_buffer_[i];
                positions_[i] = i + 1;
            }
            desired_ = {1.0, 1.0 + 2.0 * q_, 1.0 + 4.0 * q_, 3.0 + 2.0 * q_, 5.0};
        }
        return;
    }
    ++n_;

    int cell;
    if (x < heights_[0]) {
        heights_[0] = x;
        cell = 0;
    } else if (x >= heights_[4]) {
        if (x > heights_[4]) heights_[4] = x;
        cell = 3;
    } else {
        cell = 0;
        while (cell < 3 && x >= heights_[cell + 1]) ++cell;
    }

    for (int i = cell + 1; i < 5; ++i) positions_[i] += 1.0;
    for (int i = 0; i < 5; ++i) desired_[i] += increments_[i];

    for (int i = 1; i <= 3; ++i) {
        double d = desired_[i] - positions_[i];
        if ((d >= 1.0 && positions_[i + 1] - positions_[i] > 1.0) ||
            (d <= -1.0 && positions_[i - 1] - positions_[i] < -1.0)) {
            double s = d < 0.0 ? -1.0 : 1.0;
            double candidate = parabolic(i, s);
            if (heights_[i - 1] < candidate && candidate < heights_[i + 1])
                heights_[i] = candidate;
            else
                heights_[i] = linear(i, static_cast<int>(s));
            positions_[i] += s;
        }
    }
    check_markers();
}

double P2Quantile::estimate() const {
    if (n_ < 5) throw std::logic_error("P2Quantile: estimate requires at least 5 observations");
    return heights_[2];
}

double P2Quantile::parabolic(int i, double s) const {
    double np = positions_[i + 1], n0 = positions_[i], nm = positions_[i - 1];
    return heights_[i] +
           s / (np - nm) *
               ((n0 - nm + s) * (heights_[i + 1] - heights_[i]) / (np - n0) +
                (np - n0 - s) * (heights_[i] - heights_[i - 1]) / (n0 - nm));
}

double P2Quantile::linear(int i, int s) const {
    return heights_[i] +
           s * (heights_[i + s] - heights_[i]) / (positions_[i + s] - positions_[i]);
}

void P2Quantile::check_markers() const {
    for (int i = 1; i < 5; ++i) {
        require(heights_[i - 1] <= heights_[i], "P2Quantile: marker heights not monotone");
        require(positions_[i - 1] < positions_[i], "P2Quantile: marker positions not increasing");
    }
}

double nearest_rank_quantile(std::vector<double> values, double q) {
    if (values.empty()) throw std::invalid_argument("nearest_rank_quantile: empty sample");
    if (!(q > 0.0 && q <= 1.0))
        throw std::invalid_argument("nearest_rank_quantile: q must be in (0,1]");
    std::sort(values.begin(), values.end());
    auto rank = static_cast<std::size_t>(
        std::ceil(q * static_cast<double>(values.size())));
    if (rank == 0) rank = 1;
    return values[rank - 1];
}

}  // namespace minos
