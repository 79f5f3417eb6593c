#include "burstpower/annealer.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "burstpower/closed_form.hpp"
#include "burstpower/error.hpp"

namespace burstpower {

std::string_view to_string(Problem p) { return p == Problem::Variable ? "variable" : "fixed"; }

void AnnealingSchedule::validate() const {
    if (t0 && !(*t0 > 0.0 && std::isfinite(*t0))) throw std::invalid_argument("t0 must be positive");
    if (!(c_sa > 0.0 && std::isfinite(c_sa))) throw std::invalid_argument("c_sa must be positive");
    if (!(t_min > 0.0)) throw std::invalid_argument("t_min must be positive");
    if (t0 && !(t_min < *t0)) throw std::invalid_argument("t_min must be below t0");
    if (outer_per_temp < 1) throw std::invalid_argument("outer_per_temp must be >= 1");
    if (rate_inner < 1) throw std::invalid_argument("rate_inner must be >= 1");
}

double temperature(const AnnealingSchedule& schedule, std::uint64_t b) {
    if (!schedule.t0) throw std::invalid_argument("temperature() needs a resolved t0");
    return *schedule.t0 / (schedule.c_sa * static_cast<double>(b) + 1.0);
}

bool metropolis_accept(double candidate, double current, double temperature, Rng& rng) {
    if (!(temperature > 0.0)) throw std::invalid_argument("temperature must be positive");
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double s = unit(rng);
    return s < std::exp(-(candidate - current) / temperature);
}

EvalReport evaluate(Problem problem, const Policy& policy, const ProblemSpec& spec) {
    return problem == Problem::Variable ? evaluate_variable(policy, spec) : evaluate_fixed(policy, spec);
}

namespace {

constexpr double kFallbackT0 = 100.0;  // 10 x 10 W

// Shared Metropolis bookkeeping. A problem-specific `draw` callback generates
// one outer candidate and hands every feasible (eps, rates, avg_power) it finds
// to offer().
class Chain {
public:
    Chain(const ProblemSpec& spec, const AnnealingSchedule& schedule)
        : spec_(spec), schedule_(schedule), rng_(schedule.seed) {}

    Rng& rng() { return rng_; }

    void count_evaluation() { ++evaluated_; }

    void offer(double avg_power, const std::vector<double>& eps, const std::vector<double>& rates) {
        ++feasible_;
        if (!metropolis_accept(avg_power, current_, temperature_, rng_)) return;
        ++accepted_;
        current_ = avg_power;
        if (!has_best_ || avg_power <= best_) {
            has_best_ = true;
            best_ = avg_power;
            best_eps_ = eps;
            best_rates_ = rates;
        }
    }

    template <class Draw>
    SolveResult run(Problem problem, Draw&& draw) {
        // Probe at infinite temperature: the first feasible candidate becomes
        // the initial state and fixes T0 when the schedule leaves it open.
        AnnealingSchedule sched = schedule_;
        if (!sched.t0) {
            temperature_ = std::numeric_limits<double>::infinity();
            for (int i = 0; i < sched.outer_per_temp && !has_best_; ++i) draw(*this);
            sched.t0 = has_best_ ? 10.0 * best_ : kFallbackT0;
            if (!(sched.t0 > sched.t_min)) sched.t0 = std::max(kFallbackT0, 10.0 * sched.t_min);
        }
        std::vector<TracePoint> trace;
        std::uint64_t b = 0;
        for (;; ++b) {
            temperature_ = temperature(sched, b);
            if (temperature_ < sched.t_min) break;
            for (int i = 0; i < sched.outer_per_temp; ++i) draw(*this);
            if (sched.trace_stride != 0 && b % sched.trace_stride == 0)
                trace.push_back({temperature_, current_,
                                         has_best_ ? best_ : std::numeric_limits<double>::infinity()});
        }
        if (!has_best_) throw InfeasibleError("no feasible solution found", evaluated_);

        Policy best = make_policy(OutageVector(best_eps_), best_rates_, spec_.channel);
        const EvalReport report = evaluate(problem, best, spec_);
        if (!report.feasible) throw std::logic_error("annealer kept an infeasible best policy");
        return SolveResult{.best_avg_power = report.avg_power,
                           .best_policy = std::move(best),
                           .accepted_count = accepted_,
                           .feasible_count = feasible_,
                           .evaluated_count = evaluated_,
                           .temperature_steps = b,
                           .t0 = *sched.t0,
                           .trace = std::move(trace)};
    }

private:
    const ProblemSpec& spec_;
    const AnnealingSchedule& schedule_;
    Rng rng_;
    std::uint64_t accepted_ = 0;
    std::uint64_t feasible_ = 0;
    std::uint64_t evaluated_ = 0;
    double temperature_ = 1.0;
    double current_ = std::numeric_limits<double>::infinity();
    bool has_best_ = false;
    double best_ = std::numeric_limits<double>::infinity();
    std::vector<double> best_eps_;
    std::vector<double> best_rates_;
};

// eps_i ~ U(guard, 1 - guard), terminal state capped at eps_out.
void draw_outages(Rng& rng, const ProblemSpec& spec, std::vector<double>& eps) {
    const std::size_t n = static_cast<std::size_t>(spec.n_states) + 1;
    eps.resize(n);
    std::uniform_real_distribution<double> inner(kEpsilonGuard, 1.0 - kEpsilonGuard);
    std::uniform_real_distribution<double> terminal(kEpsilonGuard,
                                                    std::min(spec.eps_out, 1.0 - kEpsilonGuard));
    for (std::size_t i = 0; i + 1 < n; ++i) eps[i] = inner(rng);
    eps[n - 1] = terminal(rng);
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

SolveResult solve_variable(const ProblemSpec& spec, const AnnealingSchedule& schedule) {
    spec.validate();
    schedule.validate();

    std::vector<double> eps;
    std::vector<double> rates(static_cast<std::size_t>(spec.n_states) + 1);
    std::vector<double> powers(rates.size());
    std::uniform_real_distribution<double> rate_dist(spec.r_min, spec.r_max);

    auto draw = [&](Chain& chain) {
        Rng& rng = chain.rng();
        draw_outages(rng, spec, eps);
        chain.count_evaluation();

        SteadyState pi;
        try {
            pi = steady_state(OutageVector(eps));
        } catch (const ModelError&) {
            return;
        }
        // Loss and burst constraints depend on eps alone.
        if (!at_most(dot(eps, pi.pi), spec.gamma) || !at_most(eps.back(), spec.eps_out)) return;

        for (int j = 0; j < schedule.rate_inner; ++j) {
            for (double& r : rates) r = rate_dist(rng);
            if (j > 0) chain.count_evaluation();
            if (!at_least(dot(rates, pi.pi), spec.avg_rate)) continue;
            bool peak_ok = true;
            for (std::size_t i = 0; i < rates.size() && peak_ok; ++i) {
                powers[i] = power_for_outage(eps[i], rates[i], spec.channel);
                peak_ok = at_most(powers[i], spec.peak_power);
            }
            if (!peak_ok) continue;
            chain.offer(dot(powers, pi.pi), eps, rates);
        }
    };
    return Chain(spec, schedule).run(Problem::Variable, draw);
}

SolveResult solve_fixed(const ProblemSpec& spec, const AnnealingSchedule& schedule) {
    spec.validate();
    schedule.validate();

    const double p_out = power_for_outage(spec.eps_out, spec.avg_rate, spec.channel);
    if (p_out > spec.peak_power) throw InfeasibleError("feasibility window empty");

    std::vector<double> eps;
    const std::vector<double> rates(static_cast<std::size_t>(spec.n_states) + 1, spec.avg_rate);
    std::vector<double> powers(rates.size());

    auto draw = [&](Chain& chain) {
        Rng& rng = chain.rng();
        draw_outages(rng, spec, eps);
        std::sort(eps.begin(), eps.end(), std::greater<>());
        chain.count_evaluation();

        for (std::size_t i = 0; i < eps.size(); ++i) powers[i] = power_for_outage(eps[i], spec.avg_rate, spec.channel);
        const double p_max = *std::max_element(powers.begin(), powers.end());
        if (!at_most(p_max, spec.peak_power) || !at_least(powers.back(), p_out)) return;

        SteadyState pi;
        try {
            pi = steady_state(OutageVector(eps));
        } catch (const ModelError&) {
            return;
        }
        if (!at_most(dot(eps, pi.pi), spec.gamma)) return;
        chain.offer(dot(powers, pi.pi), eps, rates);
    };
    return Chain(spec, schedule).run(Problem::Fixed, draw);
}

SolveResult solve(Problem problem, const ProblemSpec& spec, const AnnealingSchedule& schedule) {
    return problem == Problem::Variable ? solve_variable(spec, schedule) : solve_fixed(spec, schedule);
}

}  // namespace burstpower
