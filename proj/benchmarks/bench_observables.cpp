#include "bbdrag/observables.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace bbdrag;

const QuadratureSpec spec;

void bm_force_lab(benchmark::State& state)
{
    const double beta = static_cast<double>(state.range(0)) / 10.0;
    for (auto _ : state)
        benchmark::DoNotOptimize(force_lab({beta, 1.0, 1.5}, {1.0}, LorentzOscillator{}, spec).value);
}
BENCHMARK(bm_force_lab)->DenseRange(1, 9, 4)->Unit(benchmark::kMillisecond);

void bm_heating_tophat(benchmark::State& state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(heating_rate({0.5, 1.0, 0.0}, {1.0}, TopHat{1.0, 0.5, 1.5}, spec).value);
}
BENCHMARK(bm_heating_tophat)->Unit(benchmark::kMillisecond);

void bm_evaluate_all(benchmark::State& state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(evaluate_all({0.5, 1.0, 2.0}, {1.0}, DrudeSphere{1.0, 3.0, 1.0}, spec));
}
BENCHMARK(bm_evaluate_all)->Unit(benchmark::kMillisecond);

} // namespace
