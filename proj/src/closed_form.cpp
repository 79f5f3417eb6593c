#include "burstpower/closed_form.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "burstpower/error.hpp"

namespace burstpower {

namespace {

void require_two_states(const ProblemSpec& spec) {
    spec.validate();
    if (spec.n_states != 1) throw std::invalid_argument("closed form defined only for N=1");
}

void require_grid(int grid_points) {
    if (grid_points < 2) throw std::invalid_argument("grid_points must be >= 2");
}

double grid_value(double lo, double hi, int k, int points) {
    if (k == points - 1) return hi;
    return lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(points - 1);
}

// (2^r - 1) * N0 / (Omega * -ln(1 - eps)), i.e. the state power written out.
double state_power(double rate, double eps, const ChannelModel& ch) {
    return std::expm1(rate * std::log(2.0)) * ch.noise_power /
           (ch.mean_fading_power * -std::log1p(-eps));
}

}  // namespace

double n1_epsilon0(double gamma, double eps1) {
    if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("gamma must lie in (0, 1)");
    if (!(eps1 > 0.0 && eps1 < 1.0)) throw std::invalid_argument("eps1 must lie in (0, 1)");
    const double eps0 = (1.0 - eps1) * gamma / (1.0 - gamma);
    if (!(eps0 < 1.0)) throw InfeasibleError("infeasible gamma/eps pair");
    return eps0;
}

std::pair<double, double> n1_steady(double eps0, double eps1) {
    if (!(eps0 > 0.0 && eps0 < 1.0) || !(eps1 > 0.0 && eps1 < 1.0))
        throw std::invalid_argument("outage probabilities must lie in (0, 1)");
    const double denom = 1.0 + eps0 - eps1;
    return {(1.0 - eps1) / denom, eps0 / denom};
}

ClosedFormSolution n1_variable_solution(const ProblemSpec& spec, double r1) {
    require_two_states(spec);
    if (!(r1 >= 0.0)) throw std::invalid_argument("r1 must be non-negative");

    const double eps1 = spec.eps_out;
    const double eps0 = n1_epsilon0(spec.gamma, eps1);
    const auto [pi0, pi1] = n1_steady(eps0, eps1);

    const double r0 = (spec.avg_rate - r1 * pi1) / pi0;
    if (r0 > spec.r_max) throw InfeasibleError("raise R_min");
    if (r0 < spec.r_min) throw InfeasibleError("R_0 falls below r_min");

    const double avg = state_power(r0, eps0, spec.channel) * pi0 + state_power(r1, eps1, spec.channel) * pi1;
    return {make_policy(OutageVector({eps0, eps1}), {r0, r1}, spec.channel), avg, {pi0, pi1}};
}

ClosedFormSolution n1_variable_search(const ProblemSpec& spec, int grid_points) {
    require_two_states(spec);
    require_grid(grid_points);

    const double hi = std::max(spec.r_min, spec.avg_rate);
    std::optional<ClosedFormSolution> best;
    for (int k = 0; k < grid_points; ++k) {
        const double r1 = grid_value(spec.r_min, hi, k, grid_points);
        try {
            ClosedFormSolution s = n1_variable_solution(spec, r1);
            if (!evaluate_variable(s.policy, spec).feasible) continue;
            if (!best || s.avg_power < best->avg_power) best = std::move(s);
        } catch (const InfeasibleError&) {
        }
    }
    if (!best) throw InfeasibleError("no feasible grid point", static_cast<std::uint64_t>(grid_points));
    return *std::move(best);
}

FixedRegion fixed_region(const ProblemSpec& spec) {
    return spec.eps_out <= spec.gamma ? FixedRegion::BurstDominant : FixedRegion::AverageDominant;
}

FixedClosedForm n1_fixed_solution(const ProblemSpec& spec) {
    require_two_states(spec);
    const FixedRegion region = fixed_region(spec);

    double eps0 = spec.gamma;
    double eps1 = spec.gamma;
    if (region == FixedRegion::BurstDominant) {
        eps1 = spec.eps_out;
        eps0 = n1_epsilon0(spec.gamma, eps1);
    }
    const auto [pi0, pi1] = n1_steady(eps0, eps1);
    const double p1 = state_power(spec.avg_rate, eps1, spec.channel);
    if (p1 > spec.peak_power) throw InfeasibleError("peak power infeasible");

    const double avg = state_power(spec.avg_rate, eps0, spec.channel) * pi0 + p1 * pi1;
    Policy policy = make_policy(OutageVector({eps0, eps1}), {spec.avg_rate, spec.avg_rate}, spec.channel);
    return {{std::move(policy), avg, {pi0, pi1}}, region};
}

ClosedFormSolution n1_fixed_search(const ProblemSpec& spec, int grid_points) {
    require_two_states(spec);
    require_grid(grid_points);

    const double hi = std::min(spec.eps_out, 1.0 - kEpsilonGuard);
    std::vector<double> candidates;
    for (int k = 0; k < grid_points; ++k) candidates.push_back(grid_value(kEpsilonGuard, hi, k, grid_points));
    // The constant-gamma policy sits on the family whenever eps_out allows it.
    if (spec.gamma >= kEpsilonGuard && spec.gamma <= hi) candidates.push_back(spec.gamma);

    std::optional<ClosedFormSolution> best;
    for (double eps1 : candidates) {
        try {
            const double eps0 = n1_epsilon0(spec.gamma, eps1);
            const auto [pi0, pi1] = n1_steady(eps0, eps1);
            Policy policy =
                make_policy(OutageVector({eps0, eps1}), {spec.avg_rate, spec.avg_rate}, spec.channel);
            if (!evaluate_fixed(policy, spec).feasible) continue;
            const double avg = policy.powers[0] * pi0 + policy.powers[1] * pi1;
            if (!best || avg < best->avg_power) best = ClosedFormSolution{std::move(policy), avg, {pi0, pi1}};
        } catch (const InfeasibleError&) {
        }
    }
    if (!best) throw InfeasibleError("no feasible grid point", static_cast<std::uint64_t>(grid_points));
    return *std::move(best);
}

}  // namespace burstpower
