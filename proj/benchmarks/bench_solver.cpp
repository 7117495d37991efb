// Microbenchmarks of the time stepper and the diagnostics it feeds: the
// nonlinear right-hand side, one ETDRK2 step, the exact per-mode propagator,
// and a full diagnostics row.

#include <benchmark/benchmark.h>

#include <cmath>
#include <memory>

#include "fracns/functionals.h"
#include "fracns/grid.h"
#include "fracns/initial_data.h"
#include "fracns/modes.h"
#include "fracns/solver.h"
#include "fracns/trajectory.h"

namespace {

using namespace fracns;

State bump_state(int n) {
    auto grid = std::make_shared<const Grid>(n, 25.0 * M_PI);
    return make_initial(InitKind::MeanZeroBump, 1e-2, 2.0, grid, 1);
}

void bm_nonlinear_rhs(benchmark::State& state) {
    const State st = bump_state(static_cast<int>(state.range(0)));
    PhysParams params;
    for (auto _ : state) benchmark::DoNotOptimize(nonlinear_rhs(st, params, true));
}
BENCHMARK(bm_nonlinear_rhs)->RangeMultiplier(2)->Range(64, 512);

void bm_etdrk2_step(benchmark::State& state) {
    const State st = bump_state(static_cast<int>(state.range(0)));
    SolverConfig cfg;
    cfg.functionals = FunctionalConfig::for_beta(cfg.params.beta);
    for (auto _ : state) benchmark::DoNotOptimize(step(st, cfg.dt, cfg));
}
BENCHMARK(bm_etdrk2_step)->RangeMultiplier(2)->Range(64, 512);

void bm_evolve_linear(benchmark::State& state) {
    const State st = bump_state(static_cast<int>(state.range(0)));
    PhysParams params;
    for (auto _ : state) benchmark::DoNotOptimize(evolve_linear(st, 1.0, params));
}
BENCHMARK(bm_evolve_linear)->RangeMultiplier(2)->Range(64, 512);

void bm_diagnostics_row(benchmark::State& state) {
    const State st = bump_state(static_cast<int>(state.range(0)));
    PhysParams params;
    const FunctionalConfig cfg = FunctionalConfig::for_beta(params.beta);
    double t = 1.0;
    for (auto _ : state) {
        NormTrajectory traj;
        record(st, t, cfg, params, {0.0, 1.0}, traj);
        benchmark::DoNotOptimize(traj);
        t += 1.0;
    }
}
BENCHMARK(bm_diagnostics_row)->RangeMultiplier(2)->Range(64, 256);

}  // namespace

BENCHMARK_MAIN();
