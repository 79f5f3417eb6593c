// Serial reference vs OpenMP fan-out for the three independent-job kernels.

#include <benchmark/benchmark.h>

#include <omp.h>

#include "burstpower/parallel.hpp"

namespace bp = burstpower;

namespace {

bp::AnnealingSchedule bench_schedule() {
    bp::AnnealingSchedule s;
    s.t0 = 5.0;
    s.t_min = 0.01;
    s.outer_per_temp = 50;
    s.rate_inner = 5;
    return s;
}

bp::SweepRequest sweep_request() {
    std::vector<double> values;
    for (int k = 1; k <= 8; ++k) values.push_back(0.05 * k);
    bp::ProblemSpec base;
    base.n_states = 2;
    return {.problem = bp::Problem::Fixed,
            .axis = bp::SweepAxis::EpsOut,
            .values = values,
            .base = base,
            .schedule = bench_schedule(),
            .closed_form_grid = 201};
}

bp::SimConfig sim_config() {
    return {.policy = bp::make_policy(bp::OutageVector({0.225, 0.1}), {1.0, 1.0}, bp::ChannelModel{}),
            .channel = bp::ChannelModel{},
            .slots = 200'000,
            .seed = 1};
}

void BM_SweepSerial(benchmark::State& state) {
    const auto req = sweep_request();
    for (auto _ : state) benchmark::DoNotOptimize(bp::run_sweep_serial(req));
}

void BM_SweepParallel(benchmark::State& state) {
    const auto req = sweep_request();
    for (auto _ : state) benchmark::DoNotOptimize(bp::run_sweep(req, static_cast<int>(state.range(0))));
}

void BM_RestartsSerial(benchmark::State& state) {
    bp::ProblemSpec spec;
    spec.n_states = 2;
    for (auto _ : state) benchmark::DoNotOptimize(bp::solve_restarts_serial(bp::Problem::Variable, spec, bench_schedule(), 8));
}

void BM_RestartsParallel(benchmark::State& state) {
    bp::ProblemSpec spec;
    spec.n_states = 2;
    for (auto _ : state)
        benchmark::DoNotOptimize(
            bp::solve_restarts(bp::Problem::Variable, spec, bench_schedule(), 8, static_cast<int>(state.range(0))));
}

void BM_ReplicationsSerial(benchmark::State& state) {
    const auto cfg = sim_config();
    for (auto _ : state) benchmark::DoNotOptimize(bp::simulate_replicated_serial(cfg, 8));
}

void BM_ReplicationsParallel(benchmark::State& state) {
    const auto cfg = sim_config();
    for (auto _ : state) benchmark::DoNotOptimize(bp::simulate_replicated(cfg, 8, static_cast<int>(state.range(0))));
}

void thread_counts(benchmark::internal::Benchmark* b) {
    for (int t = 1; t <= omp_get_num_procs(); t *= 2) b->Arg(t);
}

}  // namespace

BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Apply(thread_counts)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_RestartsSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RestartsParallel)->Apply(thread_counts)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ReplicationsSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ReplicationsParallel)->Apply(thread_counts)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
