// Serial reference vs OpenMP for the row-parallel kernels.

#include <benchmark/benchmark.h>

#include "zne/analysis.h"

namespace {

using namespace zne;

std::vector<size_t> grid_ns() {
    std::vector<size_t> ns;
    for (size_t n = 1; n <= 20; n++) {
        ns.push_back(n);
    }
    return ns;
}

const std::vector<double> kLambdas{2, 4, 8, 16, 32, 64, 128, 256};

void BM_DensityGrid(benchmark::State &state) {
    auto ns = grid_ns();
    for (auto _ : state) {
        auto g = state.range(0) ? density_grid(kAllFamilies, ns, kLambdas) : density_grid_serial(kAllFamilies, ns, kLambdas);
        benchmark::DoNotOptimize(g);
    }
}
BENCHMARK(BM_DensityGrid)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

void BM_OmegaRange(benchmark::State &state) {
    for (auto _ : state) {
        auto v = state.range(0) ? verify_omega_range(1000) : verify_omega_range_serial(1000);
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(BM_OmegaRange)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

void BM_BiasSweep(benchmark::State &state) {
    SweepSpec spec;
    spec.noise = NoiseKind::kNonMarkovian;
    spec.axis = SweepAxis::kEta;
    spec.axis_values = default_axis_values(SweepAxis::kEta);
    spec.families.assign(std::begin(kAllFamilies), std::end(kAllFamilies));
    spec.ns = {1, 3, 5, 7, 9};
    spec.lambdas = {4, 32, 256};
    spec.fake_square = true;
    for (auto _ : state) {
        auto rows = state.range(0) ? bias_sweep(spec) : bias_sweep_serial(spec);
        benchmark::DoNotOptimize(rows);
    }
}
BENCHMARK(BM_BiasSweep)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

void BM_MonteCarloVariance(benchmark::State &state) {
    auto model = NoiseModel::markovian(0.4);
    NodeSet nodes = nodes_for_overhead(SpacingFamily::kTiltedChebyshev, 9, 16.0);
    ShotPlan plan = allocate_shots(lagrange_weights(nodes), 1000000);
    for (auto _ : state) {
        auto v = state.range(0) ? monte_carlo_variance(model, nodes, plan, 1.0, 10000)
                                : monte_carlo_variance_serial(model, nodes, plan, 1.0, 10000);
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(BM_MonteCarloVariance)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
