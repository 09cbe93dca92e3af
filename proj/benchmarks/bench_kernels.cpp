#include "bbdrag/kernels.hpp"
#include "bbdrag/polarizability.hpp"

#include <benchmark/benchmark.h>

namespace {

void bm_bose_occupation(benchmark::State& state)
{
    double omega = 0.01;
    for (auto _ : state) {
        benchmark::DoNotOptimize(bbdrag::bose_occupation(omega, 1.0));
        omega = omega < 40.0 ? omega * 1.01 : 0.01;
    }
}
BENCHMARK(bm_bose_occupation);

template <class Model>
void bm_alpha_im(benchmark::State& state, Model model)
{
    const bbdrag::PolarizabilityModel m = model;
    double omega = 0.01;
    for (auto _ : state) {
        benchmark::DoNotOptimize(bbdrag::alpha_im(m, omega));
        omega = omega < 40.0 ? omega * 1.01 : 0.01;
    }
}
BENCHMARK_CAPTURE(bm_alpha_im, lorentz, bbdrag::LorentzOscillator{});
BENCHMARK_CAPTURE(bm_alpha_im, drude, bbdrag::DrudeSphere{1.0, 3.0, 1.0});

} // namespace
