#pragma once

#include <utility>

#include "burstpower/policy.hpp"

// Analytical solutions for a burst bound of one (two chain states). These are
// the reference values the annealer is checked against.

namespace burstpower {

/// Keeps searched outage values strictly inside (0, 1).
inline constexpr double kEpsilonGuard = 1e-6;
inline constexpr int kDefaultGridPoints = 2001;

/// eps_0 that makes the two-state chain's loss rate equal gamma when the
/// terminal state has outage eps1: (1 - eps1) * gamma / (1 - gamma).
/// Throws InfeasibleError if that lands at or above 1.
double n1_epsilon0(double gamma, double eps1);

/// (pi_0, pi_1) = ((1 - eps1), eps0) / (1 + eps0 - eps1).
std::pair<double, double> n1_steady(double eps0, double eps1);

struct ClosedFormSolution {
    Policy policy;
    double avg_power = 0.0;
    std::pair<double, double> pi;
};

/// Variable-rate boundary solution: eps = (eps0(gamma, eps_out), eps_out),
/// R_1 = r1 and R_0 chosen so the average rate equals spec.avg_rate.
/// Throws InfeasibleError("raise R_min") when R_0 > r_max.
ClosedFormSolution n1_variable_solution(const ProblemSpec& spec, double r1);

/// Uniform scalar search of n1_variable_solution over r1 in [r_min, avg_rate].
ClosedFormSolution n1_variable_search(const ProblemSpec& spec, int grid_points = kDefaultGridPoints);

enum class FixedRegion {
    BurstDominant,    // eps_out <= gamma: eps_N = eps_out binds
    AverageDominant,  // eps_out > gamma: constant eps_i = gamma
};

FixedRegion fixed_region(const ProblemSpec& spec);

struct FixedClosedForm {
    ClosedFormSolution solution;
    FixedRegion region;
};

/// Region-split fixed-rate closed form. Throws InfeasibleError("peak power
/// infeasible") if the terminal power would exceed the peak.
FixedClosedForm n1_fixed_solution(const ProblemSpec& spec);

/// Fixed-rate optimum over the loss-tight family eps_1 in (0, min(eps_out, 1 - guard)],
/// eps_0 = n1_epsilon0(gamma, eps_1). The grid is uniform plus the point
/// eps_1 = gamma when it lies in range.
ClosedFormSolution n1_fixed_search(const ProblemSpec& spec, int grid_points = kDefaultGridPoints);

}  // namespace burstpower
