#include <benchmark/benchmark.h>

#include "symstable/fisher.hpp"
#include "symstable/mle.hpp"
#include "symstable/sampling.hpp"

using namespace symstable;

namespace {

void BM_InfoMatrix(benchmark::State& state) {
  const double a = double(state.range(0)) / 100;
  for (auto _ : state) benchmark::DoNotOptimize(info_matrix(a).i_alphaalpha);
}

void BM_InfoNearTwo(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(info_near_two(1.9999, int(state.range(0))));
}

void BM_Fit(benchmark::State& state) {
  RngStream rng(3);
  const auto data = sample(StableParams(0.5, 2.0, 1.4), std::size_t(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(fit(data).theta_hat.alpha());
}

void BM_Sample(benchmark::State& state) {
  RngStream rng(5);
  const StableParams p = StableParams::standard(1.3);
  for (auto _ : state) benchmark::DoNotOptimize(sample_one(p, rng));
}

}  // namespace

BENCHMARK(BM_InfoMatrix)->Arg(50)->Arg(100)->Arg(150)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_InfoNearTwo)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Fit)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Sample);
BENCHMARK_MAIN();
