// SPDX-License-Identifier: Apache-2.0
// Serial reference loop against the OpenMP agent loop, per iteration.
#include <benchmark/benchmark.h>
#include <omp.h>

#include "leomarket/harness/simulation.hpp"

using namespace leomarket::harness;

namespace {

void run(benchmark::State& state, ExecutionPolicy policy) {
  ScenarioConfig cfg;
  cfg.n_agents = static_cast<int>(state.range(0));
  cfg.iterations = 1 << 30;
  omp_set_num_threads(policy == ExecutionPolicy::serial ? 1 : static_cast<int>(state.range(1)));
  World w = generate_scenario(cfg);
  for (auto _ : state) {
    auto r = run_iteration(w, policy);
    benchmark::DoNotOptimize(r);
  }
  state.counters["agents"] = static_cast<double>(cfg.n_agents);
  state.SetItemsProcessed(state.iterations() * cfg.n_agents);
}

void BM_Serial(benchmark::State& s) { run(s, ExecutionPolicy::serial); }
void BM_Parallel(benchmark::State& s) { run(s, ExecutionPolicy::parallel); }

}  // namespace

BENCHMARK(BM_Serial)->ArgsProduct({{10, 30}, {1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Parallel)->ArgsProduct({{10, 30}, {2, 4}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
