#include <benchmark/benchmark.h>

#include "cuspk/cyclicbar.hpp"

using namespace cuspk;

static void BM_RelativeComplex(benchmark::State& state) {
  const auto pair = normalize_orientation(2, 3, 2, 1);
  const auto m = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bar::relative_complex(pair, m));
}
BENCHMARK(BM_RelativeComplex)->DenseRange(8, 12, 2)->Unit(benchmark::kMillisecond);

static void BM_BarHomology(benchmark::State& state) {
  const auto pair = normalize_orientation(3, 4, 2, 1);
  const auto complex = bar::relative_complex(pair, static_cast<unsigned>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(bar::homology(complex));
  state.counters["basis"] = static_cast<double>(complex.total_dimension());
}
BENCHMARK(BM_BarHomology)->DenseRange(8, 12, 2)->Unit(benchmark::kMillisecond);

static void BM_PredictedHomology(benchmark::State& state) {
  const auto pair = normalize_orientation(3, 5, 2, 1);
  for (auto _ : state)
    for (unsigned m = 1; m <= 14; ++m) benchmark::DoNotOptimize(bar::predicted_homology(pair, m));
}
BENCHMARK(BM_PredictedHomology);

BENCHMARK_MAIN();
