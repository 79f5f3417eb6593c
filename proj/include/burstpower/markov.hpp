#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace burstpower {

/// Hard ceiling on the number of chain states (N + 1).
inline constexpr std::size_t kMaxStates = 64;

/// Per-state outage probabilities eps[i], i = number of consecutive losses so
/// far. Every entry lies strictly inside (0, 1) and there are at least two
/// states, so the success-runs chain is irreducible and aperiodic.
class OutageVector {
public:
    explicit OutageVector(std::vector<double> eps);

    std::size_t size() const noexcept { return eps_.size(); }
    /// Burst bound N (index of the terminal state).
    std::size_t burst_bound() const noexcept { return eps_.size() - 1; }
    double operator[](std::size_t i) const { return eps_[i]; }
    std::span<const double> values() const noexcept { return eps_; }

    friend bool operator==(const OutageVector&, const OutageVector&) = default;

private:
    std::vector<double> eps_;
};

/// Row-stochastic success-runs matrix: row i sends 1 - eps_i to state 0 and
/// eps_i to state min(i + 1, N).
class TransitionMatrix {
public:
    explicit TransitionMatrix(const OutageVector& eps);

    std::size_t size() const noexcept { return static_cast<std::size_t>(a_.rows()); }
    double operator()(std::size_t i, std::size_t j) const {
        return a_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
    const Eigen::MatrixXd& matrix() const noexcept { return a_; }

private:
    Eigen::MatrixXd a_;
};

struct SteadyState {
    std::vector<double> pi;
};

TransitionMatrix build_transition_matrix(const OutageVector& eps);

/// Stationary distribution from a dense LU solve of (A^T - I) pi = 0 with the
/// last equation replaced by sum(pi) = 1. Throws ModelError if the residual
/// |pi A - pi| exceeds 1e-10.
SteadyState steady_state(const TransitionMatrix& a);

/// Convenience: steady_state(build_transition_matrix(eps)).
SteadyState steady_state(const OutageVector& eps);

/// Long-run loss fraction sum_i eps_i * pi_i. The terminal state's
/// self-loop counts as a loss like any other failure.
double achieved_loss_rate(const OutageVector& eps, const SteadyState& pi);

}  // namespace burstpower
