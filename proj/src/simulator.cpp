#include "burstpower/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace burstpower {

void SimTally::merge(const SimTally& other) {
    if (visits.empty()) {
        visits.assign(other.visits.size(), 0);
        failures.assign(other.failures.size(), 0);
    }
    if (other.visits.size() != visits.size()) throw std::invalid_argument("cannot merge tallies of different chains");
    slots += other.slots;
    losses += other.losses;
    for (std::size_t i = 0; i < visits.size(); ++i) {
        visits[i] += other.visits[i];
        failures[i] += other.failures[i];
    }
    for (const auto& [len, count] : other.run_lengths) run_lengths[len] += count;
    violations += other.violations;
    power_sum += other.power_sum;
    rate_sum += other.rate_sum;
    delivered_sum += other.delivered_sum;
    batches.insert(batches.end(), other.batches.begin(), other.batches.end());
}

SimTally simulate_tally(const SimConfig& cfg) {
    cfg.channel.validate();
    const Policy& policy = cfg.policy;
    const std::size_t states = policy.size();
    if (policy.rates.size() != states || policy.powers.size() != states)
        throw std::invalid_argument("policy vectors have mismatched lengths");
    if (cfg.slots < 1) throw std::invalid_argument("slots must be >= 1");
    if (cfg.batches < 1) throw std::invalid_argument("batches must be >= 1");
    const std::uint64_t terminal = states - 1;

    // Success iff g >= (2^R - 1) N0 / P.
    std::vector<double> threshold(states);
    for (std::size_t i = 0; i < states; ++i) {
        const double r = policy.rates[i];
        const double p = policy.powers[i];
        if (r == 0.0)
            threshold[i] = 0.0;
        else if (p == 0.0)
            threshold[i] = std::numeric_limits<double>::infinity();
        else
            threshold[i] = std::expm1(r * std::log(2.0)) * cfg.channel.noise_power / p;
    }

    SimTally t;
    t.visits.assign(states, 0);
    t.failures.assign(states, 0);
    const std::uint64_t batch_count = std::min<std::uint64_t>(static_cast<std::uint64_t>(cfg.batches), cfg.slots);
    const std::uint64_t batch_size = (cfg.slots + batch_count - 1) / batch_count;
    t.batches.resize((cfg.slots + batch_size - 1) / batch_size);
    for (auto& b : t.batches) b.visits.assign(states, 0);

    Rng rng(cfg.seed);
    std::exponential_distribution<double> fading(1.0 / cfg.channel.mean_fading_power);

    std::uint64_t run = 0;
    const std::uint64_t total = cfg.burn_in + cfg.slots;
    for (std::uint64_t slot = 0; slot < total; ++slot) {
        const std::uint64_t state = std::min(run, terminal);
        const bool success = fading(rng) >= threshold[state];
        if (slot < cfg.burn_in) {
            run = success ? 0 : run + 1;
            continue;
        }
        SimTally::Batch& batch = t.batches[(slot - cfg.burn_in) / batch_size];
        ++batch.slots;
        ++batch.visits[state];
        batch.power += policy.powers[state];
        ++t.visits[state];
        t.power_sum += policy.powers[state];
        t.rate_sum += policy.rates[state];
        if (success) {
            t.delivered_sum += policy.rates[state];
            if (run > 0) ++t.run_lengths[run];
            run = 0;
        } else {
            ++batch.losses;
            ++t.losses;
            ++t.failures[state];
            if (run >= terminal) ++t.violations;
            ++run;
        }
    }
    if (run > 0) ++t.run_lengths[run];
    t.slots = cfg.slots;
    return t;
}

SimReport make_report(SimTally tally) {
    SimReport r;
    const double n = static_cast<double>(tally.slots);
    if (tally.slots == 0) throw std::invalid_argument("empty tally");
    r.slots = tally.slots;
    r.empirical_gamma = static_cast<double>(tally.losses) / n;
    r.occupancy.resize(tally.visits.size());
    r.state_outage.resize(tally.visits.size());
    for (std::size_t i = 0; i < tally.visits.size(); ++i) {
        r.occupancy[i] = static_cast<double>(tally.visits[i]) / n;
        r.state_outage[i] =
            tally.visits[i] ? static_cast<double>(tally.failures[i]) / static_cast<double>(tally.visits[i]) : 0.0;
    }
    // Run length >= N exactly when the chain sits in the terminal state.
    if (tally.visits.back() > 0) r.empirical_eps_out = r.state_outage.back();
    r.run_length_histogram = tally.run_lengths;
    r.avg_power = tally.power_sum / n;
    r.transmitted_rate = tally.rate_sum / n;
    r.delivered_rate = tally.delivered_sum / n;
    r.violations = tally.violations;
    r.tally = std::move(tally);
    return r;
}

SimReport simulate(const SimConfig& cfg) { return make_report(simulate_tally(cfg)); }

AnalyticSummary analytic_summary(const Policy& policy) {
    AnalyticSummary a;
    const SteadyState pi = steady_state(policy.eps);
    a.pi = pi.pi;
    a.gamma_r = achieved_loss_rate(policy.eps, pi);
    a.avg_power = average_power(policy.powers, pi.pi);
    a.eps.assign(policy.eps.values().begin(), policy.eps.values().end());
    return a;
}

namespace {

template <class Stat>
double batch_std_error(const std::vector<SimTally::Batch>& batches, double overall, Stat stat) {
    if (batches.size() < 2) return 0.0;
    double total = 0.0;
    double acc = 0.0;
    for (const auto& b : batches) {
        const double s = static_cast<double>(b.slots);
        const double d = stat(b) / s - overall;
        acc += s * s * d * d;
        total += s;
    }
    const double k = static_cast<double>(batches.size());
    return std::sqrt(acc * k / (k - 1.0)) / total;
}

Comparison make_comparison(double analytic, double empirical, double se) {
    Comparison c{analytic, empirical, se, 0.0};
    const double diff = empirical - analytic;
    if (se > 0.0)
        c.z = diff / se;
    else if (diff != 0.0)
        c.z = std::copysign(std::numeric_limits<double>::infinity(), diff);
    return c;
}

}  // namespace

ValidationRecord compare(const AnalyticSummary& analytic, SimReport report) {
    const SimTally& t = report.tally;
    if (analytic.pi.size() != t.visits.size()) throw std::invalid_argument("analytic/simulated state count mismatch");

    ValidationRecord v;
    v.gamma = make_comparison(analytic.gamma_r, report.empirical_gamma,
                              batch_std_error(t.batches, report.empirical_gamma,
                                              [](const SimTally::Batch& b) { return static_cast<double>(b.losses); }));
    v.avg_power = make_comparison(analytic.avg_power, report.avg_power,
                                  batch_std_error(t.batches, report.avg_power,
                                                  [](const SimTally::Batch& b) { return b.power; }));
    for (std::size_t i = 0; i < analytic.pi.size(); ++i) {
        const double se = batch_std_error(t.batches, report.occupancy[i], [i](const SimTally::Batch& b) {
            return static_cast<double>(b.visits[i]);
        });
        v.occupancy.push_back(make_comparison(analytic.pi[i], report.occupancy[i], se));

        const double e = analytic.eps[i];
        if (t.visits[i] == 0) {
            v.state_outage.push_back({e, 0.0, 0.0, 0.0});
        } else {
            const double se_out = std::sqrt(e * (1.0 - e) / static_cast<double>(t.visits[i]));
            v.state_outage.push_back(make_comparison(e, report.state_outage[i], se_out));
        }
    }

    auto track = [&v](const Comparison& c) { v.max_abs_z = std::max(v.max_abs_z, std::abs(c.z)); };
    track(v.gamma);
    track(v.avg_power);
    for (const auto& c : v.occupancy) track(c);
    for (const auto& c : v.state_outage) track(c);
    v.report = std::move(report);
    return v;
}

ValidationRecord validate(const Policy& policy, const ProblemSpec& spec, std::uint64_t slots, std::uint64_t seed) {
    if (policy.size() != static_cast<std::size_t>(spec.n_states) + 1)
        throw std::invalid_argument("policy size does not match the spec's burst bound");
    SimConfig cfg{.policy = policy, .channel = spec.channel, .slots = slots, .seed = seed};
    return compare(analytic_summary(policy), simulate(cfg));
}

}  // namespace burstpower
