#include <benchmark/benchmark.h>

#include <random>

#include "subdcor/subdcor.hpp"

using namespace subdcor;

namespace {

SampleMatrix gaussian(std::mt19937_64& gen, std::size_t m, std::size_t d) {
  std::normal_distribution<double> nd;
  SampleMatrix out(m, d);
  for (auto& v : out.values()) v = nd(gen);
  return out;
}

DiscreteDataset synthetic(std::size_t support) {
  GeneratorSpec spec;
  spec.family = Family::exp1_modified;
  spec.x_support = spec.y_support = support;
  spec.n = 2000;
  spec.seed = 5;
  return generate(spec).dataset;
}

}  // namespace

static void BM_DistanceCorrelation(benchmark::State& state) {
  std::mt19937_64 gen(1);
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto x = gaussian(gen, m, 1);
  const auto y = gaussian(gen, m, 20);
  for (auto _ : state) benchmark::DoNotOptimize(distance_correlation(x, y));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DistanceCorrelation)->RangeMultiplier(2)->Range(8, 256)->Complexity(benchmark::oNSquared);

static void BM_EnsembleDcor(benchmark::State& state) {
  const auto ds = synthetic(20);
  const Rng stream(3);
  for (auto _ : state) benchmark::DoNotOptimize(ensemble_dcor(ds, Direction::forward, 0.3, 100, stream));
}
BENCHMARK(BM_EnsembleDcor)->Unit(benchmark::kMillisecond);

static void BM_InferDirection(benchmark::State& state) {
  const auto ds = synthetic(static_cast<std::size_t>(state.range(0)));
  SubsampleConfig cfg;
  cfg.p_grid = default_p_grid();
  cfg.seed = 9;
  for (auto _ : state) benchmark::DoNotOptimize(infer_direction(ds, cfg));
}
BENCHMARK(BM_InferDirection)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

static void BM_DcInfer(benchmark::State& state) {
  const auto ds = synthetic(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(dc_infer(ds));
}
BENCHMARK(BM_DcInfer)->Arg(20)->Arg(40);

BENCHMARK_MAIN();
