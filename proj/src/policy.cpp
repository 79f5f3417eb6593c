#include "burstpower/policy.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace burstpower {

void ProblemSpec::validate() const {
    auto require = [](bool ok, const char* what) {
        if (!ok) throw std::invalid_argument(what);
    };
    require(gamma > 0.0 && gamma < 1.0, "gamma must lie in (0, 1)");
    require(n_states >= 1, "n must be >= 1");
    require(static_cast<std::size_t>(n_states) < kMaxStates, "n exceeds the supported state count");
    require(eps_out > 0.0 && eps_out < 1.0, "eps_out must lie in (0, 1)");
    require(avg_rate > 0.0 && std::isfinite(avg_rate), "rate must be positive");
    require(r_min >= 0.0, "r_min must be non-negative");
    require(r_max > 0.0 && std::isfinite(r_max), "r_max must be positive");
    require(r_min <= r_max, "r_min must not exceed r_max");
    require(peak_power > 0.0 && std::isfinite(peak_power), "peak_power must be positive");
    channel.validate();
}

Policy make_policy(OutageVector eps, std::vector<double> rates, const ChannelModel& ch) {
    if (rates.size() != eps.size()) throw std::invalid_argument("rates/eps length mismatch");
    std::vector<double> powers(rates.size());
    for (std::size_t i = 0; i < rates.size(); ++i) powers[i] = power_for_outage(eps[i], rates[i], ch);
    return Policy{std::move(eps), std::move(rates), std::move(powers)};
}

void check_policy_consistent(const Policy& policy, const ChannelModel& ch) {
    if (policy.rates.size() != policy.size() || policy.powers.size() != policy.size())
        throw std::invalid_argument("policy vectors have mismatched lengths");
    for (std::size_t i = 0; i < policy.size(); ++i) {
        const double expected = power_for_outage(policy.eps[i], policy.rates[i], ch);
        const double scale = std::max(std::abs(expected), 1e-300);
        if (std::abs(policy.powers[i] - expected) > 1e-10 * scale)
            throw std::invalid_argument("power for state " + std::to_string(i) +
                                        " is inconsistent with its outage and rate");
    }
}

std::string_view to_string(Constraint c) {
    switch (c) {
        case Constraint::C1: return "C1";
        case Constraint::C2: return "C2";
        case Constraint::C3: return "C3";
        case Constraint::C4: return "C4";
        case Constraint::Peak: return "PEAK";
    }
    return "?";
}

double average_power(std::span<const double> powers, std::span<const double> pi) {
    if (powers.size() != pi.size()) throw std::invalid_argument("powers/pi length mismatch");
    double sum = 0.0;
    for (std::size_t i = 0; i < powers.size(); ++i) sum += powers[i] * pi[i];
    return sum;
}

namespace {

void check_dimensions(const Policy& policy, const ProblemSpec& spec) {
    if (policy.size() != static_cast<std::size_t>(spec.n_states) + 1)
        throw std::invalid_argument("policy has " + std::to_string(policy.size()) +
                                    " states, spec expects " + std::to_string(spec.n_states + 1));
    if (policy.rates.size() != policy.size() || policy.powers.size() != policy.size())
        throw std::invalid_argument("policy vectors have mismatched lengths");
}

EvalReport base_report(const Policy& policy) {
    EvalReport r;
    r.pi = steady_state(policy.eps);
    r.gamma_r = achieved_loss_rate(policy.eps, r.pi);
    r.avg_power = average_power(policy.powers, r.pi.pi);
    r.avg_rate_achieved = average_power(policy.rates, r.pi.pi);
    r.eps_n = policy.eps[policy.size() - 1];
    return r;
}

bool peak_ok(const Policy& policy, double peak) {
    for (double p : policy.powers)
        if (!at_most(p, peak)) return false;
    return true;
}

}  // namespace

EvalReport evaluate_variable(const Policy& policy, const ProblemSpec& spec) {
    check_dimensions(policy, spec);
    EvalReport r = base_report(policy);

    if (!at_least(r.avg_rate_achieved, spec.avg_rate)) r.violated.push_back(Constraint::C1);
    if (!at_most(r.gamma_r, spec.gamma)) r.violated.push_back(Constraint::C2);
    if (!at_most(r.eps_n, spec.eps_out)) r.violated.push_back(Constraint::C3);
    for (double rate : policy.rates) {
        if (!at_least(rate, spec.r_min) || !at_most(rate, spec.r_max)) {
            r.violated.push_back(Constraint::C4);
            break;
        }
    }
    if (!peak_ok(policy, spec.peak_power)) r.violated.push_back(Constraint::Peak);

    r.feasible = r.violated.empty();
    return r;
}

EvalReport evaluate_fixed(const Policy& policy, const ProblemSpec& spec) {
    check_dimensions(policy, spec);
    for (double rate : policy.rates) {
        if (std::abs(rate - spec.avg_rate) > kFeasibilityTol * std::max(1.0, spec.avg_rate))
            throw std::invalid_argument("fixed-rate policy malformed");
    }
    EvalReport r = base_report(policy);

    const double p_n = policy.powers.back();
    const double p_out = power_for_outage(spec.eps_out, spec.avg_rate, spec.channel);

    if (!at_most(r.gamma_r, spec.gamma)) r.violated.push_back(Constraint::C2);
    // Lower edge of the feasibility window P_out <= P_N <= P_m.
    if (!at_most(r.eps_n, spec.eps_out) || !at_least(p_n, p_out)) r.violated.push_back(Constraint::C3);
    if (!peak_ok(policy, spec.peak_power)) r.violated.push_back(Constraint::Peak);

    r.feasible = r.violated.empty();
    return r;
}

bool check_power_ordering(std::span<const double> powers) {
    for (std::size_t i = 1; i < powers.size(); ++i)
        if (powers[i] < powers[i - 1] - 1e-9) return false;
    return true;
}

}  // namespace burstpower
