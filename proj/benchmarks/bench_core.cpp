#include <benchmark/benchmark.h>

#include <optional>

#include "oemi/oemi.hpp"

namespace {

oemi::SystemParams forward() {
    return oemi::nonreciprocal_configuration(5.0, std::nullopt, {5.0, 5.0, 5.0}, 0.005, oemi::Direction::forward);
}

void BM_ScatteringMatrix(benchmark::State& state) {
    const oemi::SystemParams p = forward();
    double w = -25.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(oemi::scattering_matrix(p, w));
        w = w > 25.0 ? -25.0 : w + 0.01;
    }
}
BENCHMARK(BM_ScatteringMatrix);

void BM_Sweep(benchmark::State& state) {
    const oemi::SystemParams p = forward();
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(oemi::sweep(p, -25.0, 25.0, n));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Sweep)->Arg(2001)->Arg(5001);

void BM_Eigenvalues(benchmark::State& state) {
    const oemi::SystemParams p = forward();
    for (auto _ : state) benchmark::DoNotOptimize(oemi::eigenvalues(p));
}
BENCHMARK(BM_Eigenvalues);

void BM_StabilityReport(benchmark::State& state) {
    const oemi::SystemParams p = forward();
    for (auto _ : state) benchmark::DoNotOptimize(oemi::stability_report(p));
}
BENCHMARK(BM_StabilityReport);

} // namespace

BENCHMARK_MAIN();
