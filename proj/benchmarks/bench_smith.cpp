#include <benchmark/benchmark.h>

#include <random>

#include "cuspk/algebra/abelian_group.hpp"
#include "cuspk/algebra/smith.hpp"
#include "cuspk/cyclicbar.hpp"

using namespace cuspk;

static algebra::IntegerMatrix random_matrix(std::size_t rows, std::size_t cols, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<long> entry(-9, 9);
  algebra::IntegerMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = entry(rng);
  return m;
}

static void BM_SmithDense(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto m = random_matrix(n, n, 7);
  for (auto _ : state) benchmark::DoNotOptimize(algebra::smith_normal_form(m));
}
BENCHMARK(BM_SmithDense)->Arg(8)->Arg(16)->Arg(32);

static void BM_InvariantFactorsDense(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto m = random_matrix(n, n + 4, 11);
  for (auto _ : state) benchmark::DoNotOptimize(algebra::invariant_factors(m));
}
BENCHMARK(BM_InvariantFactorsDense)->Arg(16)->Arg(48);

// Boundary matrices of the bar complex are the realistic sparse input.
static void BM_InvariantFactorsBarBoundary(benchmark::State& state) {
  const auto pair = normalize_orientation(2, 3, 2, 1);
  const auto complex = bar::relative_complex(pair, static_cast<unsigned>(state.range(0)));
  std::size_t widest = 1;
  for (std::size_t n = 1; n < complex.boundary.size(); ++n)
    if (complex.boundary[n].cols() > complex.boundary[widest].cols()) widest = n;
  const auto& d = complex.boundary[widest];
  for (auto _ : state) benchmark::DoNotOptimize(algebra::invariant_factors(d));
  state.counters["cols"] = static_cast<double>(d.cols());
}
BENCHMARK(BM_InvariantFactorsBarBoundary)->Arg(8)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
