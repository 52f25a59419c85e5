#include <benchmark/benchmark.h>

#include "twolayer/evolution.hpp"
#include "twolayer/inner_solver.hpp"
#include "twolayer/outer_solver.hpp"
#include "twolayer/stationary.hpp"

using namespace twolayer;

namespace {

const ModelParams& preset() {
  static const ModelParams p = presets::LinearPreset{}.make();
  return p;
}

void BM_SolveInner(benchmark::State& state) {
  const double rho = static_cast<double>(state.range(0)) / 4.0;
  for (auto _ : state) benchmark::DoNotOptimize(solve_inner(preset(), rho).phi);
}
BENCHMARK(BM_SolveInner)->Arg(1)->Arg(4)->Arg(16);

void BM_CriticalRadius(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(critical_radius(preset()));
}
BENCHMARK(BM_CriticalRadius);

void BM_GrowthFunctional(benchmark::State& state) {
  const double Rc = critical_radius(preset());
  const double R = static_cast<double>(state.range(0)) / 2.0;
  for (auto _ : state) benchmark::DoNotOptimize(growth_functional(preset(), R, Rc, {}));
}
BENCHMARK(BM_GrowthFunctional)->Arg(2)->Arg(5)->Arg(20);

void BM_FindStationary(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(find_stationary(preset()).R_s);
}
BENCHMARK(BM_FindStationary);

void BM_SigmaStar(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sigma_star(preset()));
}
BENCHMARK(BM_SigmaStar);

void BM_Evolve(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(evolve(preset(), 0.5, -1.0).samples.size());
}
BENCHMARK(BM_Evolve)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
