#pragma once

// Fan-out of independent jobs (sweep points, solver restarts, simulation
// replications) over an OpenMP team. Each kernel has a serial twin that is the
// reference the parallel version must reproduce bit for bit: every job owns
// its seed and results are merged in job order, never completion order.

#include <cstdint>
#include <vector>

#include "burstpower/simulator.hpp"
#include "burstpower/sweep.hpp"

namespace burstpower {

/// threads <= 0 uses the OpenMP default.
std::vector<SweepRow> run_sweep(const SweepRequest& request, int threads = 0);
std::vector<SweepRow> run_sweep_serial(const SweepRequest& request);

struct RestartResult {
    SolveResult best;
    std::uint64_t seed = 0;  // seed of the winning restart
    int winner = 0;
    int restarts = 0;
    int failed = 0;  // restarts that found nothing feasible
};

/// Restart k uses seed derive_seed(schedule.seed, k), except restart 0 which
/// keeps schedule.seed. Ties go to the lowest index. Throws InfeasibleError
/// when every restart fails.
RestartResult solve_restarts(Problem problem, const ProblemSpec& spec, const AnnealingSchedule& schedule,
                             int restarts, int threads = 0);
RestartResult solve_restarts_serial(Problem problem, const ProblemSpec& spec, const AnnealingSchedule& schedule,
                                    int restarts);

/// Replication k simulates with seed derive_seed(cfg.seed, k); tallies are
/// merged in replication order.
SimReport simulate_replicated(const SimConfig& cfg, int replications, int threads = 0);
SimReport simulate_replicated_serial(const SimConfig& cfg, int replications);

}  // namespace burstpower
