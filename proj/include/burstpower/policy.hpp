#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string_view>
#include <vector>

#include "burstpower/channel.hpp"
#include "burstpower/markov.hpp"

namespace burstpower {

/// Loss/rate/power requirements for one link.
struct ProblemSpec {
    double gamma = 0.2;       // average loss target
    int n_states = 1;         // burst bound N (max tolerated consecutive losses)
    double eps_out = 0.1;     // max loss probability once N losses are in a row
    double avg_rate = 1.0;    // R, bits/s/Hz
    double r_min = 0.001;
    double r_max = 6.6582114827517955;  // log2(1 + 100)
    double peak_power = 100.0;          // watts
    ChannelModel channel;

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

/// Per-state outage, rate and the power that realises them on `channel`.
struct Policy {
    OutageVector eps;
    std::vector<double> rates;
    std::vector<double> powers;

    std::size_t size() const noexcept { return eps.size(); }
};

/// Builds a policy whose powers follow from (eps, rates) on the channel.
Policy make_policy(OutageVector eps, std::vector<double> rates, const ChannelModel& ch);

/// Throws std::invalid_argument if the stored powers disagree with (eps, rates)
/// by more than 1e-10 relative.
void check_policy_consistent(const Policy& policy, const ChannelModel& ch);

/// Constraint identifiers. The numbering follows the variable-rate problem:
/// C1 average rate, C2 average loss, C3 burst outage, C4 per-state rate
/// bounds, Peak per-state power. The fixed-rate evaluator reports its loss,
/// burst and power checks under C2, C3 and Peak.
enum class Constraint { C1, C2, C3, C4, Peak };

std::string_view to_string(Constraint c);

struct EvalReport {
    double avg_power = 0.0;
    double avg_rate_achieved = 0.0;
    double gamma_r = 0.0;
    double eps_n = 0.0;
    bool feasible = false;
    std::vector<Constraint> violated;
    SteadyState pi;
};

// Relative slack for constraint comparisons, so that closed-form policies that
// meet a bound with equality are not rejected over the last ulp.
inline constexpr double kFeasibilityTol = 1e-12;

inline bool at_most(double value, double bound) {
    return value <= bound + kFeasibilityTol * std::max(1.0, std::abs(bound));
}
inline bool at_least(double value, double bound) {
    return value >= bound - kFeasibilityTol * std::max(1.0, std::abs(bound));
}

double average_power(std::span<const double> powers, std::span<const double> pi);

EvalReport evaluate_variable(const Policy& policy, const ProblemSpec& spec);

/// Fixed-rate problem. Requires rates[i] == spec.avg_rate for all i and
/// throws std::invalid_argument("fixed-rate policy malformed") otherwise.
EvalReport evaluate_fixed(const Policy& policy, const ProblemSpec& spec);

/// Non-decreasing within 1e-9 absolute slack.
bool check_power_ordering(std::span<const double> powers);

}  // namespace burstpower
