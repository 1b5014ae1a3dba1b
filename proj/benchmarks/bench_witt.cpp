#include <benchmark/benchmark.h>

#include <random>

#include "cuspk/kgroups.hpp"
#include "cuspk/witt/structure_table.hpp"
#include "cuspk/witt/witt_vector.hpp"

using namespace cuspk;

static void BM_StructureTableBuild(benchmark::State& state) {
  const auto pair = normalize_orientation(2, 3, 2, 1);
  const auto set = truncation_set(pair, static_cast<unsigned>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(witt::StructurePolynomialTable::build(set));
  state.counters["size"] = static_cast<double>(set.size());
}
BENCHMARK(BM_StructureTableBuild)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_WittAddMul(benchmark::State& state) {
  const auto pair = normalize_orientation(2, 3, 2, 2);
  const witt::FiniteField field(2, 2);
  const witt::FieldWittRing ring(field, truncation_set(pair, 1));
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::uint64_t> coord(0, field.size() - 1);
  auto random_vector = [&] {
    std::vector<witt::FiniteField::Element> c(ring.set().size());
    for (auto& x : c) x = coord(rng);
    return ring.make(std::move(c));
  };
  const auto x = random_vector();
  const auto y = random_vector();
  for (auto _ : state) {
    benchmark::DoNotOptimize(ring.add(x, y));
    benchmark::DoNotOptimize(ring.mul(x, y));
  }
}
BENCHMARK(BM_WittAddMul);

static void BM_WittQuotient(benchmark::State& state) {
  const auto pair = normalize_orientation(2, 3, 2, static_cast<long>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(witt_quotient(pair, 0));
}
BENCHMARK(BM_WittQuotient)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_ClosedForm(benchmark::State& state) {
  const auto pair = normalize_orientation(3, 5, 2, 2);
  for (auto _ : state) benchmark::DoNotOptimize(closed_form(pair, static_cast<unsigned>(state.range(0))));
}
BENCHMARK(BM_ClosedForm)->Arg(0)->Arg(4)->Arg(16);

BENCHMARK_MAIN();
