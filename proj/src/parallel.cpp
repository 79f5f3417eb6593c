#include "burstpower/parallel.hpp"

#include <exception>
#include <optional>
#include <stdexcept>
#include <string>

#include <omp.h>

#include "burstpower/error.hpp"

namespace burstpower {

namespace {

int team_size(int threads) { return threads > 0 ? threads : omp_get_max_threads(); }

struct RestartOutcome {
    std::optional<SolveResult> result;
    std::uint64_t evaluated = 0;
    std::string reason;
    std::exception_ptr error;
};

std::uint64_t restart_seed(const AnnealingSchedule& schedule, int k) {
    return k == 0 ? schedule.seed : derive_seed(schedule.seed, static_cast<std::uint64_t>(k));
}

RestartOutcome run_restart(Problem problem, const ProblemSpec& spec, AnnealingSchedule schedule, int k) {
    schedule.seed = restart_seed(schedule, k);
    RestartOutcome out;
    try {
        out.result = solve(problem, spec, schedule);
    } catch (const InfeasibleError& e) {
        out.evaluated = e.evaluated_count();
        out.reason = e.what();
    } catch (...) {
        out.error = std::current_exception();
    }
    return out;
}

RestartResult pick_best(std::vector<RestartOutcome>& outcomes, const AnnealingSchedule& schedule) {
    std::optional<std::size_t> winner;
    std::uint64_t evaluated = 0;
    int failed = 0;
    std::string reason;
    for (std::size_t k = 0; k < outcomes.size(); ++k) {
        auto& o = outcomes[k];
        if (o.error) std::rethrow_exception(o.error);
        if (!o.result) {
            if (reason.empty()) reason = o.reason;
            ++failed;
            evaluated += o.evaluated;
            continue;
        }
        if (!winner || o.result->best_avg_power < outcomes[*winner].result->best_avg_power) winner = k;
    }
    if (!winner) throw InfeasibleError(reason, evaluated);
    const int w = static_cast<int>(*winner);
    return RestartResult{.best = std::move(*outcomes[*winner].result),
                         .seed = restart_seed(schedule, w),
                         .winner = w,
                         .restarts = static_cast<int>(outcomes.size()),
                         .failed = failed};
}

void check_restarts(const ProblemSpec& spec, const AnnealingSchedule& schedule, int restarts) {
    if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
    spec.validate();
    schedule.validate();
}

SimConfig replica(const SimConfig& cfg, int k) {
    SimConfig c = cfg;
    c.seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(k));
    return c;
}

SimReport merge_tallies(std::vector<SimTally>& tallies) {
    SimTally merged;
    for (const auto& t : tallies) merged.merge(t);
    return make_report(std::move(merged));
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepRequest& request, int threads) {
    request.validate();
    std::vector<SweepRow> rows(request.values.size());
    const auto n = static_cast<std::ptrdiff_t>(rows.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(team_size(threads))
    for (std::ptrdiff_t i = 0; i < n; ++i) rows[static_cast<std::size_t>(i)] = solve_point(request, static_cast<std::size_t>(i));
    return rows;
}

std::vector<SweepRow> run_sweep_serial(const SweepRequest& request) {
    request.validate();
    std::vector<SweepRow> rows;
    rows.reserve(request.values.size());
    for (std::size_t i = 0; i < request.values.size(); ++i) rows.push_back(solve_point(request, i));
    return rows;
}

RestartResult solve_restarts(Problem problem, const ProblemSpec& spec, const AnnealingSchedule& schedule,
                             int restarts, int threads) {
    check_restarts(spec, schedule, restarts);
    std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(restarts));
#pragma omp parallel for schedule(dynamic, 1) num_threads(team_size(threads))
    for (int k = 0; k < restarts; ++k) outcomes[static_cast<std::size_t>(k)] = run_restart(problem, spec, schedule, k);
    return pick_best(outcomes, schedule);
}

RestartResult solve_restarts_serial(Problem problem, const ProblemSpec& spec, const AnnealingSchedule& schedule,
                                    int restarts) {
    check_restarts(spec, schedule, restarts);
    std::vector<RestartOutcome> outcomes;
    for (int k = 0; k < restarts; ++k) outcomes.push_back(run_restart(problem, spec, schedule, k));
    return pick_best(outcomes, schedule);
}

SimReport simulate_replicated(const SimConfig& cfg, int replications, int threads) {
    if (replications < 1) throw std::invalid_argument("replications must be >= 1");
    std::vector<SimTally> tallies(static_cast<std::size_t>(replications));
    std::exception_ptr error;
#pragma omp parallel for schedule(static) num_threads(team_size(threads))
    for (int k = 0; k < replications; ++k) {
        try {
            tallies[static_cast<std::size_t>(k)] = simulate_tally(replica(cfg, k));
        } catch (...) {
#pragma omp critical
            error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
    return merge_tallies(tallies);
}

SimReport simulate_replicated_serial(const SimConfig& cfg, int replications) {
    if (replications < 1) throw std::invalid_argument("replications must be >= 1");
    std::vector<SimTally> tallies;
    for (int k = 0; k < replications; ++k) tallies.push_back(simulate_tally(replica(cfg, k)));
    return merge_tallies(tallies);
}

}  // namespace burstpower
