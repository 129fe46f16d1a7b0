#include "largesol/blowcurve.hpp"
#include "largesol/radial_ode.hpp"

#include <benchmark/benchmark.h>

namespace {

const largesol::ProblemParams kSym{3, 0, 0, 2, 2};

void BM_BlowupRun(benchmark::State& state) {
    largesol::IntegratorConfig cfg;
    cfg.rel_tol = std::pow(10.0, -static_cast<double>(state.range(0)));
    for (auto _ : state) {
        auto run = largesol::blowup_run(kSym, 1, 1, cfg);
        benchmark::DoNotOptimize(run.estimate.R_hat);
        state.counters["rhs"] = static_cast<double>(run.trajectory.rhs_evaluations);
    }
}
BENCHMARK(BM_BlowupRun)->Arg(8)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_PowerSolution(benchmark::State& state) {
    const double r0 = 0.1;
    const largesol::RadialState s{r0, 2 / (r0 * r0), -4 / (r0 * r0 * r0), 2 / (r0 * r0), -4 / (r0 * r0 * r0)};
    for (auto _ : state) benchmark::DoNotOptimize(largesol::integrate(kSym, s, 10.0).samples.size());
}
BENCHMARK(BM_PowerSolution)->Unit(benchmark::kMicrosecond);

void BM_TraceCurve(benchmark::State& state) {
    largesol::CurveOptions opt;
    opt.threads = static_cast<unsigned>(state.range(1));
    for (auto _ : state)
        benchmark::DoNotOptimize(largesol::trace_S(3, 2, 2, static_cast<int>(state.range(0)), {}, opt).max_rho_residual);
}
BENCHMARK(BM_TraceCurve)->Args({17, 1})->Args({17, 4})->Args({33, 4})->Unit(benchmark::kMillisecond);

}  // namespace
