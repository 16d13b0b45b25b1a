#include <benchmark/benchmark.h>

#include <vector>

#include "apcss/apc.hpp"
#include "apcss/calibration.hpp"
#include "apcss/random.hpp"
#include "apcss/ranking.hpp"

namespace {

using namespace apcss;

DataTable normal_table(const LayoutDims& dims, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> v(dims.total());
  for (auto& x : v) x = standard_normal(rng);
  return DataTable(dims, std::move(v));
}

RankTable row_ranks(std::int64_t k) {
  const LayoutDims dims{4, 4, static_cast<std::size_t>(k)};
  return rank_within(align(normal_table(dims, 1), Axis::Column, AlignmentMethod::Average),
                     Axis::Row);
}

void BM_CrossedComparisonBrute(benchmark::State& state) {
  const RankTable r = row_ranks(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(crossed_comparison_brute(r, Axis::Column, 0, 1));
}
BENCHMARK(BM_CrossedComparisonBrute)->Arg(1)->Arg(2)->Arg(4)->Arg(8);

void BM_CrossedComparisonFast(benchmark::State& state) {
  const RankTable r = row_ranks(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(crossed_comparison_fast(r, Axis::Column, 0, 1));
}
BENCHMARK(BM_CrossedComparisonFast)->Arg(1)->Arg(2)->Arg(4)->Arg(8);

void BM_ScaledMaxima(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const DataTable t = normal_table({n, n, 3}, 2);
  const auto method = state.range(1) == 0 ? AlignmentMethod::Average : AlignmentMethod::Median;
  for (auto _ : state) benchmark::DoNotOptimize(apc_scaled_maxima(t, method));
}
BENCHMARK(BM_ScaledMaxima)->ArgsProduct({{3, 6}, {0, 1}});

void BM_CalibrateNull(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(calibrate_null({3, 3, 3}, AlignmentMethod::Median, n, n, 1, 1));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(2 * n));
}
BENCHMARK(BM_CalibrateNull)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
