// Serial reference kernels against their OpenMP versions on the three hot
// loops: Monte Carlo sampling, the definition check, and the condition scan.

#include <benchmark/benchmark.h>

#include "sbconc/conditions.hpp"
#include "sbconc/harness.hpp"
#include "sbconc/instance.hpp"

namespace {

using sbconc::ExecPolicy;

ExecPolicy policy_for(const benchmark::State& state) {
  const auto threads = static_cast<int>(state.range(0));
  return threads == 0 ? ExecPolicy::serial() : ExecPolicy::omp(threads);
}

void BM_SampleValues(benchmark::State& state) {
  const auto inst = sbconc::make_distinct_values(50, 50, 1.0);
  const auto policy = policy_for(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sbconc::sample_values(inst, 100000, 42, policy));
  }
  state.SetItemsProcessed(state.iterations() * 100000);
}

void BM_DefinitionCheck(benchmark::State& state) {
  const auto inst = sbconc::make_distinct_values(50, 50, 1.0);
  const auto policy = policy_for(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sbconc::check_self_bounding(inst, 500, 7, policy));
  }
  state.SetItemsProcessed(state.iterations() * 500);
}

void BM_ConditionScan(benchmark::State& state) {
  const sbconc::GammaFamily fam{1.0, 1.9, 2.0 / 3.0};
  const auto policy = policy_for(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sbconc::check_condition1(fam, 1e3, 1000000, policy));
  }
}

// Argument 0 runs the serial reference; n > 0 runs OpenMP with n threads.
BENCHMARK(BM_SampleValues)->Arg(0)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DefinitionCheck)->Arg(0)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ConditionScan)->Arg(0)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
