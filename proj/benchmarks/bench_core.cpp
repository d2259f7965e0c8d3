#include <benchmark/benchmark.h>

#include "rgfair/adjust.hpp"
#include "rgfair/fairtest.hpp"
#include "rgfair/mtable.hpp"
#include "rgfair/random.hpp"
#include "rgfair/sim.hpp"

namespace {

void BM_ConstructMTable(benchmark::State& state) {
  const auto k = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rgfair::constructMTable(k, 0.5, 0.1));
  }
}
BENCHMARK(BM_ConstructMTable)->RangeMultiplier(10)->Range(10, 10000);

void BM_FailProbability(benchmark::State& state) {
  const auto table = rgfair::constructMTable(state.range(0), 0.5, 0.1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rgfair::failProbability(table));
  }
}
BENCHMARK(BM_FailProbability)->RangeMultiplier(10)->Range(10, 10000);

void BM_AdjustAlpha(benchmark::State& state) {
  const auto k = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rgfair::adjustAlpha(k, 0.5, 0.1));
  }
}
BENCHMARK(BM_AdjustAlpha)->RangeMultiplier(10)->Range(10, 1000)->Unit(benchmark::kMillisecond);

void BM_SimulationTrial(benchmark::State& state) {
  const auto k = state.range(0);
  const auto table = rgfair::constructMTable(k, 0.5, 0.1);
  std::uint64_t trial = 0;
  for (auto _ : state) {
    auto rng = rgfair::Xoshiro256StarStar::forStream(0, static_cast<std::uint64_t>(k), trial++);
    const auto ranking = rgfair::generateFairRanking(k, 0.5, rng);
    benchmark::DoNotOptimize(rgfair::firstViolation(ranking, table));
  }
}
BENCHMARK(BM_SimulationTrial)->RangeMultiplier(10)->Range(10, 10000);

} // namespace

BENCHMARK_MAIN();
