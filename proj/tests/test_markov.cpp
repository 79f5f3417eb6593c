#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "burstpower/markov.hpp"
#include "support.hpp"

using namespace burstpower;
namespace ts = testing_support;

TEST_CASE("outage vector rejects degenerate chains") {
    CHECK_THROWS_WITH_AS(OutageVector({0.3}), "N must be >= 1", std::invalid_argument);
    CHECK_THROWS_AS(OutageVector({0.0, 0.1}), std::invalid_argument);
    CHECK_THROWS_AS(OutageVector({0.2, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(OutageVector(std::vector<double>(kMaxStates + 1, 0.5)), std::invalid_argument);
    CHECK(OutageVector({0.2, 0.1}).burst_bound() == 1);
}

TEST_CASE("transition matrix pattern") {
    const TransitionMatrix a = build_transition_matrix(OutageVector({0.225, 0.1}));
    CHECK(a(0, 0) == doctest::Approx(0.775));
    CHECK(a(0, 1) == doctest::Approx(0.225));
    CHECK(a(1, 0) == doctest::Approx(0.9));
    CHECK(a(1, 1) == doctest::Approx(0.1));

    const TransitionMatrix b = build_transition_matrix(OutageVector({0.5, 0.5, 0.5}));
    const double expect[3][3] = {{0.5, 0.5, 0.0}, {0.5, 0.0, 0.5}, {0.5, 0.0, 0.5}};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) CHECK(b(i, j) == expect[i][j]);

    const TransitionMatrix c = build_transition_matrix(OutageVector({1e-12, 1e-12, 1e-12}));
    for (std::size_t i = 0; i < 3; ++i) CHECK(c(i, 0) == doctest::Approx(1.0));
}

TEST_CASE("steady state reference points") {
    const auto s = steady_state(OutageVector({0.225, 0.1}));
    CHECK(s.pi[0] == doctest::Approx(0.8).epsilon(1e-14));
    CHECK(s.pi[1] == doctest::Approx(0.2).epsilon(1e-14));

    const auto h = steady_state(OutageVector({0.5, 0.5, 0.5}));
    CHECK(h.pi[0] == doctest::Approx(0.5));
    CHECK(h.pi[1] == doctest::Approx(0.25));
    CHECK(h.pi[2] == doctest::Approx(0.25));

    const auto z = steady_state(OutageVector({1e-12, 1e-12, 1e-12, 1e-12}));
    CHECK(z.pi[0] == doctest::Approx(1.0));
    for (std::size_t i = 1; i < z.pi.size(); ++i) CHECK(z.pi[i] < 1e-11);
}

TEST_CASE("achieved loss rate reference points") {
    const OutageVector e({0.225, 0.1});
    CHECK(achieved_loss_rate(e, SteadyState{{0.8, 0.2}}) == doctest::Approx(0.2).epsilon(1e-15));
    const OutageVector h({0.5, 0.5, 0.5});
    CHECK(achieved_loss_rate(h, SteadyState{{0.5, 0.25, 0.25}}) == doctest::Approx(0.5));
    CHECK(achieved_loss_rate(OutageVector({0.3, 0.3, 0.3, 0.3}), SteadyState{{0.1, 0.6, 0.2, 0.1}}) ==
          doctest::Approx(0.3));
    CHECK_THROWS_AS(achieved_loss_rate(e, SteadyState{{1.0}}), std::invalid_argument);
}

TEST_CASE("property: rows are stochastic with the success-runs pattern") {
    ts::Gen g(17);
    for (int k = 0; k < 300; ++k) {
        const int n = ts::uniform_int(g, 1, 20);
        const auto eps = ts::outage_entries(g, n, 1e-6, 1.0 - 1e-6);
        const TransitionMatrix a(OutageVector{eps});
        for (std::size_t i = 0; i <= static_cast<std::size_t>(n); ++i) {
            double row = 0.0;
            const std::size_t next = std::min<std::size_t>(i + 1, static_cast<std::size_t>(n));
            for (std::size_t j = 0; j <= static_cast<std::size_t>(n); ++j) {
                row += a(i, j);
                if (j != 0 && j != next) CHECK(a(i, j) == 0.0);
            }
            CHECK(std::abs(row - 1.0) < 1e-12);
            CHECK(a(i, next) == eps[i]);
        }
    }
}

TEST_CASE("property: linear solve equals product form") {
    ts::Gen g(99);
    for (int k = 0; k < 1000; ++k) {
        const int n = ts::uniform_int(g, 1, 10);
        const auto eps = ts::outage_entries(g, n);
        const auto pi = steady_state(OutageVector{eps}).pi;
        const auto oracle = ts::product_form(eps);
        double sum = 0.0;
        for (std::size_t i = 0; i < pi.size(); ++i) {
            REQUIRE(std::abs(pi[i] - oracle[i]) < 1e-10);
            CHECK(pi[i] >= 0.0);
            sum += pi[i];
        }
        CHECK(std::abs(sum - 1.0) < 1e-12);

        // pi = pi A
        const TransitionMatrix a(OutageVector{eps});
        for (std::size_t j = 0; j < pi.size(); ++j) {
            double s = 0.0;
            for (std::size_t i = 0; i < pi.size(); ++i) s += pi[i] * a(i, j);
            CHECK(std::abs(s - pi[j]) < 1e-10);
        }
    }
}

TEST_CASE("property: two-state chain matches the closed form") {
    ts::Gen g(3);
    for (int k = 0; k < 1000; ++k) {
        const double e0 = ts::uniform(g, 1e-4, 0.9999);
        const double e1 = ts::uniform(g, 1e-4, 0.9999);
        const auto pi = steady_state(OutageVector({e0, e1})).pi;
        const double d = 1.0 + e0 - e1;
        CHECK(std::abs(pi[0] - (1.0 - e1) / d) < 1e-12);
        CHECK(std::abs(pi[1] - e0 / d) < 1e-12);
    }
}

TEST_CASE("property: loss rate lies between the extreme outages") {
    ts::Gen g(8);
    for (int k = 0; k < 500; ++k) {
        const int n = ts::uniform_int(g, 1, 12);
        const auto eps = ts::outage_entries(g, n);
        const OutageVector v{eps};
        const double gr = achieved_loss_rate(v, steady_state(v));
        const auto [lo, hi] = std::minmax_element(eps.begin(), eps.end());
        CHECK(gr > *lo);
        CHECK(gr < *hi);
    }
}
