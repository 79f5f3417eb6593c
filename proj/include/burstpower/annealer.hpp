#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "burstpower/policy.hpp"
#include "burstpower/rng.hpp"

namespace burstpower {

enum class Problem { Variable, Fixed };

std::string_view to_string(Problem p);

/// Fast-annealing schedule T_b = T0 / (c_sa * b + 1), run until T_b < t_min.
struct AnnealingSchedule {
    // Unset: 10x the average power of the first feasible candidate drawn
    // (up to outer_per_temp probes), or 100 W when none turns up.
    std::optional<double> t0;
    double c_sa = 1.0;
    double t_min = 1e-3;
    int outer_per_temp = 200;  // outage-vector draws per temperature
    int rate_inner = 20;       // rate-vector draws per surviving outage vector
    std::uint64_t seed = 1;
    // Record a trace sample every `trace_stride` temperatures; 0 disables.
    std::uint64_t trace_stride = 0;

    void validate() const;
};

struct TracePoint {
    double temperature;
    double current_avg_power;
    double best_avg_power;

    friend bool operator==(const TracePoint&, const TracePoint&) = default;
};

struct SolveResult {
    double best_avg_power = 0.0;
    Policy best_policy;
    std::uint64_t accepted_count = 0;
    std::uint64_t feasible_count = 0;
    std::uint64_t evaluated_count = 0;
    std::uint64_t temperature_steps = 0;
    double t0 = 0.0;  // resolved initial temperature
    std::vector<TracePoint> trace;
};

/// T0 / (c_sa * b + 1). The schedule's t0 must be set.
double temperature(const AnnealingSchedule& schedule, std::uint64_t b);

/// Metropolis test with muting: draws s ~ U[0, 1) and accepts iff
/// s < exp(-(candidate - current) / temperature). Improvements always pass.
bool metropolis_accept(double candidate, double current, double temperature, Rng& rng);

/// Joint outage/rate search. Outage vectors are drawn first and kept only if
/// they meet the loss and burst constraints; each survivor is then paired with
/// `rate_inner` random rate vectors in [r_min, r_max]. Throws InfeasibleError
/// if no feasible policy is seen.
SolveResult solve_variable(const ProblemSpec& spec, const AnnealingSchedule& schedule);

/// Fixed-rate search over ordered outage vectors (eps non-increasing, so
/// powers are non-decreasing). Throws InfeasibleError immediately when the
/// power window [P_out, P_m] is empty.
SolveResult solve_fixed(const ProblemSpec& spec, const AnnealingSchedule& schedule);

SolveResult solve(Problem problem, const ProblemSpec& spec, const AnnealingSchedule& schedule);

/// Feasibility check matching the problem kind.
EvalReport evaluate(Problem problem, const Policy& policy, const ProblemSpec& spec);

}  // namespace burstpower
