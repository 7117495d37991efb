// Microbenchmarks of the spectral primitives: transform round trips, Fourier
// multipliers, the dealiased product, and the dyadic norm machinery.

#include <benchmark/benchmark.h>

#include <cmath>
#include <memory>
#include <random>
#include <vector>

#include "fracns/dyadic.h"
#include "fracns/grid.h"
#include "fracns/norms.h"
#include "fracns/operators.h"
#include "fracns/spectral_field.h"

namespace {

using namespace fracns;

SpectralField random_field(std::shared_ptr<const Grid> grid, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<double> values(grid->physical_size());
    for (double& v : values) v = 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
    return SpectralField::from_physical(grid, values);
}

void bm_fft_roundtrip(benchmark::State& state) {
    auto grid = std::make_shared<const Grid>(static_cast<int>(state.range(0)), 2.0 * M_PI);
    const SpectralField f = random_field(grid, 1);
    for (auto _ : state) {
        std::vector<double> phys = f.to_physical();
        benchmark::DoNotOptimize(SpectralField::from_physical(grid, phys));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(bm_fft_roundtrip)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

void bm_pointwise_product(benchmark::State& state) {
    auto grid = std::make_shared<const Grid>(static_cast<int>(state.range(0)), 2.0 * M_PI);
    const SpectralField f = random_field(grid, 1);
    const SpectralField g = random_field(grid, 2);
    for (auto _ : state) benchmark::DoNotOptimize(pointwise_product(f, g, true));
}
BENCHMARK(bm_pointwise_product)->RangeMultiplier(2)->Range(64, 1024);

void bm_lambda_s(benchmark::State& state) {
    auto grid = std::make_shared<const Grid>(static_cast<int>(state.range(0)), 2.0 * M_PI);
    const SpectralField f = random_field(grid, 1);
    for (auto _ : state) benchmark::DoNotOptimize(lambda_s(f, 1.5));
}
BENCHMARK(bm_lambda_s)->RangeMultiplier(2)->Range(64, 1024);

void bm_besov_norm(benchmark::State& state) {
    auto grid = std::make_shared<const Grid>(static_cast<int>(state.range(0)), 2.0 * M_PI);
    SpectralField f = random_field(grid, 1);
    f.set_mean(0.0);
    const DyadicPartition part(*grid);
    const NormRequest req = NormRequest::besov(-1.0, NormRequest::infinity());
    for (auto _ : state) benchmark::DoNotOptimize(norm(f, req, part));
}
BENCHMARK(bm_besov_norm)->RangeMultiplier(2)->Range(64, 512);

void bm_lp_norm(benchmark::State& state) {
    auto grid = std::make_shared<const Grid>(static_cast<int>(state.range(0)), 2.0 * M_PI);
    const SpectralField f = random_field(grid, 1);
    const NormRequest req = NormRequest::lp(6.0);
    for (auto _ : state) benchmark::DoNotOptimize(norm(f, req));
}
BENCHMARK(bm_lp_norm)->RangeMultiplier(2)->Range(64, 512);

}  // namespace

BENCHMARK_MAIN();
