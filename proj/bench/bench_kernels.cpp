// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "selias/verify.hpp"

namespace {

using namespace selias::verify;

void BM_Equivalence(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(exhaustive_equivalence(static_cast<int>(state.range(0))));
}
void BM_EquivalenceRef(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(exhaustive_equivalence_ref(static_cast<int>(state.range(0))));
}
void BM_Balance(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(balanced_paths(static_cast<int>(state.range(0))));
}
void BM_BalanceRef(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(balanced_paths_ref(static_cast<int>(state.range(0))));
}
void BM_Stats(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(statistical_battery(0.3, state.range(0), 1));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
void BM_StatsRef(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(statistical_battery_ref(0.3, state.range(0), 1));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_Equivalence)->Arg(14)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EquivalenceRef)->Arg(14)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Balance)->Arg(12)->Arg(14)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BalanceRef)->Arg(12)->Arg(14)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Stats)->Arg(1 << 18)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StatsRef)->Arg(1 << 18)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
