#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "minos/rng.hpp"
#include "minos/stats.hpp"

using namespace minos;

namespace {

// Two-pass oracle for mean and sample variance.
std::pair<double, double> two_pass(const std::vector<double>& xs) {
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double m2 = 0.0;
    for (double x : xs) m2 += (x - mean) * (x - mean);
    return {mean, m2 / static_cast<double>(xs.size() - 1)};
}

}  // namespace

TEST_CASE("welford on a tiny hand-computable batch") {
    WelfordState w;
    for (double x : {2.0, 4.0, 6.0}) w.update(x);
    CHECK(w.mean == doctest::Approx(4.0));
    CHECK(w.variance() == doctest::Approx(4.0));
}

TEST_CASE("welford variance is undefined below two observations") {
    WelfordState w;
    w.update(7.0);
    CHECK(w.mean == 7.0);
    CHECK_THROWS_AS(w.variance(), std::logic_error);
}

TEST_CASE("welford agrees with the two-pass oracle to 1e-9 relative") {
    RngStream r(11, "welford");
    std::vector<double> xs(10000);
    for (auto& x : xs) x = 100.0 + 50.0 * r.normal();
    WelfordState w;
    for (double x : xs) w.update(x);
    auto [mean, var] = two_pass(xs);
    CHECK(std::abs(w.mean - mean) / std::abs(mean) < 1e-9);
    CHECK(std::abs(w.variance() - var) / var < 1e-9);
    CHECK(w.m2 >= 0.0);
}

TEST_CASE("p2 initialization sorts the first five observations") {
    P2Quantile p(0.5);
    for (double x : {5.0, 1.0, 4.0, 2.0, 3.0}) p.update(x);
    CHECK(p.estimate() == 3.0);
}

TEST_CASE("p2 estimate before five observations is an error") {
    P2Quantile p(0.6);
    for (double x : {1.0, 2.0, 3.0, 4.0}) p.update(x);
    CHECK_THROWS_AS(p.estimate(), std::logic_error);
}

TEST_CASE("p2 on uniform(0,1) q=0.6 lands within 0.02 of the true quantile") {
    RngStream r(21, "p2u");
    P2Quantile p(0.6);
    for (int i = 0; i < 10000; ++i) p.update(r.uniform01());
    CHECK(std::abs(p.estimate() - 0.6) < 0.02);
}

TEST_CASE("p2 tracks the full-sort quantile on a benchmark-score-like stream") {
    // Scores look like base / perf * (1 + noise) with lognormal perf.
    RngStream perf(33, "perf"), noise(34, "noise");
    P2Quantile p(0.6);
    std::vector<double> all;
    for (int i = 0; i < 10000; ++i) {
        double score = 300.0 / (std::exp(0.12 * perf.normal())) *
                       (1.0 + 0.05 * noise.normal());
        p.update(score);
        all.push_back(score);
    }
    double oracle = nearest_rank_quantile(all, 0.6);
    CHECK(std::abs(p.estimate() - oracle) / oracle < 0.02);
}

TEST_CASE("p2 survives constant and sorted adversarial streams") {
    P2Quantile c(0.4);
    for (int i = 0; i < 1000; ++i) c.update(5.0);
    CHECK(c.estimate() == 5.0);

    P2Quantile up(0.4);
    for (int i = 0; i < 1000; ++i) up.update(static_cast<double>(i));
    CHECK(up.estimate() == doctest::Approx(400.0).epsilon(0.05));

    P2Quantile down(0.4);
    for (int i = 1000; i > 0; --i) down.update(static_cast<double>(i));
    CHECK(down.estimate() == doctest::Approx(400.0).epsilon(0.05));
}

TEST_CASE("nearest-rank quantile matches the worked example") {
    std::vector<double> xs{10, 20, 30, 40, 50};
    CHECK(nearest_rank_quantile(xs, 0.4) == 20.0);
    CHECK(nearest_rank_quantile(xs, 1.0) == 50.0);
    CHECK(nearest_rank_quantile(xs, 0.01) == 10.0);
    CHECK_THROWS_AS(nearest_rank_quantile({}, 0.4), std::invalid_argument);
}

TEST_CASE("nearest-rank quantile equals a hand-rolled sort oracle on random data") {
    RngStream r(55, "nr");
    std::vector<double> xs(1000);
    for (auto& x : xs) x = std::exp(0.3 * r.normal());
    for (double q : {0.1, 0.4, 0.5, 0.9}) {
        std::vector<double> sorted = xs;
        std::sort(sorted.begin(), sorted.end());
        std::size_t rank = static_cast<std::size_t>(std::ceil(q * 1000.0));
        CHECK(nearest_rank_quantile(xs, q) == sorted[rank - 1]);
    }
}
