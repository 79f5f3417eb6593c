#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "burstpower/policy.hpp"
#include "burstpower/rng.hpp"

namespace burstpower {

struct SimConfig {
    Policy policy;
    ChannelModel channel;
    std::uint64_t slots = 1'000'000;  // counted slots, after burn-in
    std::uint64_t seed = 1;
    std::uint64_t burn_in = 1000;
    int batches = 50;  // batch-means groups for standard errors
};

/// Raw per-replication counts. Merging is element-wise addition plus
/// concatenation of batch tallies, so it is associative and the derived
/// report does not depend on merge order beyond batch ordering.
struct SimTally {
    struct Batch {
        std::uint64_t slots = 0;
        std::uint64_t losses = 0;
        double power = 0.0;
        std::vector<std::uint64_t> visits;
    };

    std::uint64_t slots = 0;
    std::uint64_t losses = 0;
    std::vector<std::uint64_t> visits;    // per state
    std::vector<std::uint64_t> failures;  // per state
    std::map<std::uint64_t, std::uint64_t> run_lengths;
    std::uint64_t violations = 0;  // slots in which a streak grew beyond N
    double power_sum = 0.0;
    double rate_sum = 0.0;
    double delivered_sum = 0.0;
    std::vector<Batch> batches;

    void merge(const SimTally& other);
};

struct SimReport {
    double empirical_gamma = 0.0;
    std::optional<double> empirical_eps_out;  // absent if state N was never visited
    std::vector<double> occupancy;
    std::vector<double> state_outage;  // failures / visits per state (0 if unvisited)
    std::map<std::uint64_t, std::uint64_t> run_length_histogram;
    double avg_power = 0.0;
    double transmitted_rate = 0.0;
    double delivered_rate = 0.0;
    std::uint64_t violations = 0;
    std::uint64_t slots = 0;
    SimTally tally;
};

/// Slot-level simulation of one replication. Fading gains are exponential with
/// mean mean_fading_power; a slot succeeds iff log2(1 + P g / N0) >= R.
SimTally simulate_tally(const SimConfig& cfg);

SimReport make_report(SimTally tally);

SimReport simulate(const SimConfig& cfg);

struct Comparison {
    double analytic = 0.0;
    double empirical = 0.0;
    double std_error = 0.0;
    double z = 0.0;
};

struct AnalyticSummary {
    double gamma_r = 0.0;
    double avg_power = 0.0;
    std::vector<double> pi;
    std::vector<double> eps;
};

AnalyticSummary analytic_summary(const Policy& policy);

struct ValidationRecord {
    Comparison gamma;
    Comparison avg_power;
    std::vector<Comparison> occupancy;
    std::vector<Comparison> state_outage;  // includes eps_out as the last entry
    double max_abs_z = 0.0;
    SimReport report;
};

/// z-scores of the simulation against the analytic values. Loss rate,
/// occupancy and power use batch-means standard errors (slots are correlated
/// through the chain); per-state outage uses the exact binomial error since
/// each visit is an independent trial.
ValidationRecord compare(const AnalyticSummary& analytic, SimReport report);

ValidationRecord validate(const Policy& policy, const ProblemSpec& spec, std::uint64_t slots,
                          std::uint64_t seed);

}  // namespace burstpower
