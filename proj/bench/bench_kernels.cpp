// Serial reference vs OpenMP for the determinant scan and the sweep grid.

#include "fluxqed/kernels.hpp"
#include "fluxqed/sweep.hpp"

#include <benchmark/benchmark.h>

using namespace fluxqed;

namespace {

SectorLayout bench_layout(int n) {
    return build_layout(DeviceGeometry::from_ratios(40.0, 20.0, n));
}

void BM_ScanSerial(benchmark::State& state) {
    const SectorLayout l = bench_layout(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::scan_determinant_serial(l, Parity::odd, 0.05, 3.0, 2000));
    }
}

void BM_ScanOmp(benchmark::State& state) {
    const SectorLayout l = bench_layout(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::scan_determinant_omp(l, Parity::odd, 0.05, 3.0, 2000));
    }
}

SweepSpec bench_sweep() {
    SweepSpec spec;
    spec.diagonal = true;
    spec.axis1.active = true;
    for (int i = 1; i <= 40; ++i) {
        spec.axis1.values.push_back(static_cast<double>(i));
    }
    spec.qubit_counts = {1, 5};
    spec.numerics.profile_points = 101;
    return spec;
}

void BM_SweepSerial(benchmark::State& state) {
    const SweepSpec spec = bench_sweep();
    const std::vector<GridPoint> grid = enumerate_grid(spec);
    for (auto _ : state) {
        benchmark::DoNotOptimize(evaluate_grid_serial(spec, grid));
    }
}

void BM_SweepOmp(benchmark::State& state) {
    const SweepSpec spec = bench_sweep();
    const std::vector<GridPoint> grid = enumerate_grid(spec);
    for (auto _ : state) {
        benchmark::DoNotOptimize(evaluate_grid_omp(spec, grid, 0));
    }
}

}  // namespace

BENCHMARK(BM_ScanSerial)->Arg(1)->Arg(9)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ScanOmp)->Arg(1)->Arg(9)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepOmp)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
