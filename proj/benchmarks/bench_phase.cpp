#include "largesol/manifolds.hpp"
#include "largesol/orbits.hpp"

#include <benchmark/benchmark.h>

namespace {

const largesol::ProblemParams kSym{3, 0, 0, 2, 2};

void BM_Catalog(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(largesol::fixed_point_catalog(kSym).size());
}
BENCHMARK(BM_Catalog)->Unit(benchmark::kMicrosecond);

void BM_M0Spectrum(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(largesol::m0_spectrum(kSym).lambda3);
}
BENCHMARK(BM_M0Spectrum);

void BM_ConnectingOrbit(benchmark::State& state) {
    const largesol::ProblemParams p{static_cast<double>(state.range(0)), 0, 0, 2, 2};
    for (auto _ : state) benchmark::DoNotOptimize(largesol::connecting_orbit(p).pass());
}
BENCHMARK(BM_ConnectingOrbit)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_RegularLaunch(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(largesol::regular_launch(kSym).limit_ratio);
}
BENCHMARK(BM_RegularLaunch)->Unit(benchmark::kMillisecond);

}  // namespace
