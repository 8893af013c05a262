// Serial reference kernels against their OpenMP versions on groups from both
// backends. Run with --benchmark_filter to pick a kernel.
//
// The references test xy == yx through two products over the full square;
// the parallel kernels use Group::commute over the upper triangle. The
// one-thread parallel runs separate that gain from the threading gain.

#include <benchmark/benchmark.h>

#include "apg/families.hpp"
#include "apg/kernels.hpp"

using namespace apg;

namespace {

const Group& group_for(int which) {
  // psl2:13 (1092) fits the dense table; suzuki:8 (29120) uses permutations.
  static const Group dense = build_family(FamilyId::parse("psl2:13"));
  static const Group perm = build_family(FamilyId::parse("suzuki:8"));
  return which == 0 ? dense : perm;
}

void BM_CommutingPairsSerial(benchmark::State& st) {
  const Group& g = group_for(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(kernels::serial::count_commuting_pairs(g));
  st.SetLabel(g.tag());
}

void BM_CommutingPairsParallel(benchmark::State& st) {
  const Group& g = group_for(static_cast<int>(st.range(0)));
  kernels::set_threads(static_cast<int>(st.range(1)));
  for (auto _ : st) benchmark::DoNotOptimize(kernels::count_commuting_pairs(g));
  kernels::set_threads(0);
  st.SetLabel(g.tag());
}

void BM_CentralizerOrdersSerial(benchmark::State& st) {
  const Group& g = group_for(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(kernels::serial::centralizer_orders(g));
  st.SetLabel(g.tag());
}

void BM_CentralizerOrdersParallel(benchmark::State& st) {
  const Group& g = group_for(static_cast<int>(st.range(0)));
  kernels::set_threads(static_cast<int>(st.range(1)));
  for (auto _ : st) benchmark::DoNotOptimize(kernels::centralizer_orders(g));
  kernels::set_threads(0);
  st.SetLabel(g.tag());
}

// Rows are quadratic in |G|, so only the dense group is used here.
void BM_CommuteRowsSerial(benchmark::State& st) {
  const Group& g = group_for(0);
  std::vector<Elem> all(g.order());
  for (Elem x = 0; x < g.order(); ++x) all[x] = x;
  for (auto _ : st) benchmark::DoNotOptimize(kernels::serial::commute_rows(g, all));
}

void BM_CommuteRowsParallel(benchmark::State& st) {
  const Group& g = group_for(0);
  std::vector<Elem> all(g.order());
  for (Elem x = 0; x < g.order(); ++x) all[x] = x;
  kernels::set_threads(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(kernels::commute_rows(g, all));
  kernels::set_threads(0);
}

}  // namespace

BENCHMARK(BM_CommutingPairsSerial)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CommutingPairsParallel)->ArgsProduct({{0, 1}, {1, 2, 4, 8}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_CentralizerOrdersSerial)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CentralizerOrdersParallel)->ArgsProduct({{0, 1}, {1, 2, 4, 8}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_CommuteRowsSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CommuteRowsParallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
