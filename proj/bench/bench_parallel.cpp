// Parallel kernels against their serial counterparts.

#include <benchmark/benchmark.h>

#include "difflearn/concentration.hpp"
#include "difflearn/estimator.hpp"
#include "difflearn/simulator.hpp"

using namespace difflearn;

namespace {

ScenarioConfig bench_scenario(std::size_t nodes) {
  ScenarioConfig c = reference_scenario();
  c.seed = 2023;
  c.node_count = nodes;
  c.horizon = 200;
  c.metrics.grid_rounds = {200};
  c.metrics.evolution_every = 0;
  return c;
}

void BM_RoundsReference(benchmark::State& state) {
  const auto c = bench_scenario(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(run_reference(c).stats.shares_delivered);
}

void BM_RoundsParallel(benchmark::State& state) {
  const auto c = bench_scenario(static_cast<std::size_t>(state.range(0)));
  SimOptions o;
  o.workers = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(run(c, o).stats.shares_delivered);
}

void BM_SelfNorm(benchmark::State& state) {
  const int workers = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(
        selfnorm_violation_rate(100, 1.0, 0.05, WeightDistribution::UniformUnit, 10000, 7, workers)
            .rate);
}

void BM_Coverage(benchmark::State& state) {
  const int workers = static_cast<int>(state.range(0));
  const auto design = uniform_design(200, 4.0, 6.0, 7);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        local_bound_coverage(5.0, design, 0.5, Phenomenon{}, 0.3, 0.05, 5000, 7, workers).rate);
}

void BM_OptimalBandwidth(benchmark::State& state) {
  Rng rng(3);
  std::uniform_real_distribution<double> ux(0.0, 10.0);
  std::vector<Sample> s(static_cast<std::size_t>(state.range(0)));
  for (auto& e : s) e = {ux(rng), 0.0};
  const BoundParams p{1.0, 0.5, 0.01};
  for (auto _ : state) benchmark::DoNotOptimize(optimize_bandwidth(5.0, s, p, 0.01, 2.0).beta);
}

}  // namespace

BENCHMARK(BM_RoundsReference)->Arg(20)->Arg(50)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RoundsParallel)
    ->Args({20, 1})
    ->Args({50, 1})
    ->Args({50, 0})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SelfNorm)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Coverage)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OptimalBandwidth)->Arg(100)->Arg(1000)->Arg(10000);

BENCHMARK_MAIN();
