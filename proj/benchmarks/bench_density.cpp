#include <benchmark/benchmark.h>

#include "symstable/density.hpp"
#include "symstable/series.hpp"

using namespace symstable;

namespace {

// args: quantity, x * 1000, alpha * 1000
void BM_EvaluateStandard(benchmark::State& state) {
  const auto q = static_cast<Quantity>(state.range(0));
  const double x = double(state.range(1)) / 1000;
  const double a = double(state.range(2)) / 1000;
  const auto probe = evaluate_standard(q, x, a);
  state.SetLabel(to_string(q) + " " + to_string(probe.method));
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_standard(q, x, a).value);
}

void density_args(benchmark::internal::Benchmark* b) {
  for (int q = 0; q < 5; ++q) {
    b->Args({q, 1500, 1500});   // integral
    b->Args({q, 1, 700});       // zero series
    b->Args({q, 200000, 1300}); // tail series
    b->Args({q, 1500, 1005});   // Cauchy Taylor window
  }
  b->Args({0, 3000, 2000});  // k = 85 series at the normal endpoint
  b->Args({0, 8000, 1999995});
}

void BM_GradHess(benchmark::State& state) {
  const StableParams p(0.2, 1.3, double(state.range(0)) / 1000);
  for (auto _ : state) benchmark::DoNotOptimize(grad_hess(1.7, p).f);
}

void BM_SeriesZeroK85(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(fa_series_zero(5.0, 1.99995, 85).value);
}

}  // namespace

BENCHMARK(BM_EvaluateStandard)->Apply(density_args);
BENCHMARK(BM_GradHess)->Arg(800)->Arg(1500);
BENCHMARK(BM_SeriesZeroK85);
