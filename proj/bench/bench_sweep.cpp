// Serial reference sweep vs the OpenMP kernel on the same small grid.
#include <benchmark/benchmark.h>
#include <omp.h>

#include "risjam/montecarlo.hpp"

using namespace risjam;

namespace {

SweepSpec bench_spec() {
  SweepSpec spec;
  spec.values = {1.0, 3.0};
  spec.schemes = {SchemeId::BCD_PSO, SchemeId::BCD_DOMAIN, SchemeId::RANDOM_PHASE};
  spec.n_trials = 8;
  return spec;
}

void BM_SweepSerialReference(benchmark::State& state) {
  const auto spec = bench_spec();
  for (auto _ : state) benchmark::DoNotOptimize(reference::run_sweep(spec, ScenarioConfig{}, SolverSettings{}));
  state.SetItemsProcessed(state.iterations() * 2 * 3 * spec.n_trials);
}

void BM_SweepOpenMP(benchmark::State& state) {
  const auto spec = bench_spec();
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep(spec, ScenarioConfig{}, SolverSettings{}, threads));
  state.SetItemsProcessed(state.iterations() * 2 * 3 * spec.n_trials);
}

void BM_SingleSolve(benchmark::State& state) {
  ScenarioConfig s;
  s.n_elements = static_cast<int>(state.range(0));
  Rng crng(1);
  const auto p = place_monitor_and_jammers(crng, s);
  const auto ch = generate_channel_set(crng, s, p.monitor, p.jammers);
  for (auto _ : state) {
    Rng rng(2);
    benchmark::DoNotOptimize(solve(ch, s, SolverConfig{}, rng));
  }
}

}  // namespace

BENCHMARK(BM_SweepSerialReference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepOpenMP)
    ->Unit(benchmark::kMillisecond)
    ->Arg(1)
    ->Arg(2)
    ->Arg(omp_get_num_procs() > 2 ? omp_get_num_procs() : 4)
    ->UseRealTime();
BENCHMARK(BM_SingleSolve)->Unit(benchmark::kMillisecond)->Arg(10)->Arg(20);

BENCHMARK_MAIN();
