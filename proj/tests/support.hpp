#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "burstpower/policy.hpp"

namespace testing_support {

using Gen = std::mt19937_64;

inline double uniform(Gen& g, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(g); }

inline int uniform_int(Gen& g, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(g); }

// Entries away from 0 and 1 so the product-form oracle stays well conditioned.
inline std::vector<double> outage_entries(Gen& g, int n, double lo = 1e-3, double hi = 0.999) {
    std::vector<double> eps(static_cast<std::size_t>(n) + 1);
    for (double& e : eps) e = uniform(g, lo, hi);
    return eps;
}

// Independent stationary distribution of the success-runs chain:
// pi_{i+1} = eps_i pi_i for i < N-1, pi_N = eps_{N-1} pi_{N-1} / (1 - eps_N).
inline std::vector<double> product_form(const std::vector<double>& eps) {
    const std::size_t n = eps.size() - 1;
    std::vector<double> pi(eps.size());
    pi[0] = 1.0;
    for (std::size_t i = 0; i + 1 < n; ++i) pi[i + 1] = eps[i] * pi[i];
    pi[n] = eps[n - 1] * pi[n - 1] / (1.0 - eps[n]);
    double sum = 0.0;
    for (double p : pi) sum += p;
    for (double& p : pi) p /= sum;
    return pi;
}

inline double rayleigh_outage(double power, double rate) { return 1.0 - std::exp(-(std::pow(2.0, rate) - 1.0) / power); }

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace testing_support
