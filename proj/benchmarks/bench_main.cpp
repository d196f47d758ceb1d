#include <benchmark/benchmark.h>

#include <complex>
#include <random>
#include <vector>

#include "ccstack/ccstack.hpp"

namespace {

// unit axis masses: the cost profile only depends on the body count
ccstack::Configuration stacked_fixture(int n) {
    return ccstack::build_stacked({n, 1.0, 1.3, 1.0, 1.0});
}

void BM_Residual(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const ccstack::Configuration config = stacked_fixture(n);
    const double lambda = ccstack::potential(config) / ccstack::inertia(config);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ccstack::residual(config, lambda).max_norm);
    }
}
BENCHMARK(BM_Residual)->Arg(4)->Arg(16)->Arg(64);

void BM_Verify(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const ccstack::Configuration config = stacked_fixture(n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ccstack::verify(config).is_cc);
    }
}
BENCHMARK(BM_Verify)->Arg(4)->Arg(16);

void BM_LambdaStar(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(ccstack::lambda_star(n));
    }
}
BENCHMARK(BM_LambdaStar)->Arg(8)->Arg(64);

void BM_SolveMasses(benchmark::State& state) {
    const ccstack::CoefficientSystem cs = ccstack::coefficients(4, 1.0, 1.3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ccstack::solve_masses(cs).lambda);
    }
}
BENCHMARK(BM_SolveMasses);

void BM_ScanCells(benchmark::State& state) {
    const int threads = static_cast<int>(state.range(0));
    ccstack::ScanOptions options;
    options.threads = threads;
    for (auto _ : state) {
        const ccstack::ScanGrid grid =
            ccstack::scan(4, {1.0, 2.0, 0.05}, {0.01, 0.5, 0.01}, options);
        benchmark::DoNotOptimize(grid.cells.size());
    }
    state.SetItemsProcessed(state.iterations() * 21 * 50);
}
BENCHMARK(BM_ScanCells)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

void BM_CirculantEigen(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> coord(-1.0, 1.0);
    std::vector<std::complex<double>> row(static_cast<std::size_t>(n));
    for (auto& e : row) e = {coord(rng), coord(rng)};
    for (auto _ : state) {
        benchmark::DoNotOptimize(ccstack::circulant_eigen(row).size());
    }
}
BENCHMARK(BM_CirculantEigen)->Arg(8)->Arg(64);

void BM_KernelAnalysis(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const ccstack::CirculantMatrix c =
        ccstack::polygon_constraint_matrix(n, ccstack::lambda_star(n) / n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ccstack::analyze_kernel(c, 1e-10).rank);
    }
}
BENCHMARK(BM_KernelAnalysis)->Arg(8)->Arg(32);

} // namespace

BENCHMARK_MAIN();
