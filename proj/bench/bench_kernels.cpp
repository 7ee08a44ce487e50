// Copyright 2026 The qsmc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Serial reference vs OpenMP kernels: Monte Carlo trials and the qutrit sweep.

#include <benchmark/benchmark.h>

#include <cmath>

#include "qsmc/montecarlo.hpp"
#include "qsmc/smc.hpp"

namespace {

using namespace qsmc;

SmcPlan qutrit_plan() {
  const std::vector<Complex> c = {std::sqrt(0.5), std::sqrt(0.3), std::sqrt(0.2)};
  return plan(SymmetricSet::make_root_set(4, c));
}

SmcPlan seven_mode_plan() {
  std::vector<Complex> c;
  for (double m2 : {0.2, 0.2, 0.2, 0.12, 0.12, 0.08, 0.08}) c.push_back(std::sqrt(m2));
  return plan(SymmetricSet::make_root_set(8, c));
}

void BM_SimulateSerial(benchmark::State& state) {
  const SmcPlan p = state.range(1) ? seven_mode_plan() : qutrit_plan();
  const SeedConfig cfg{42, static_cast<std::uint64_t>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(simulate_serial(p, cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SimulateParallel(benchmark::State& state) {
  const SmcPlan p = state.range(1) ? seven_mode_plan() : qutrit_plan();
  const SeedConfig cfg{42, static_cast<std::uint64_t>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(simulate(p, cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SweepSerial(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto grid = make_grid(0.0, 2.0 / std::sqrt(3.0), n, 0.0, 2.0 / std::sqrt(3.0), n);
  for (auto _ : state) benchmark::DoNotOptimize(sweep_qutrit_serial(grid));
  state.SetItemsProcessed(state.iterations() * n * n);
}

void BM_SweepParallel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto grid = make_grid(0.0, 2.0 / std::sqrt(3.0), n, 0.0, 2.0 / std::sqrt(3.0), n);
  for (auto _ : state) benchmark::DoNotOptimize(sweep_qutrit(grid));
  state.SetItemsProcessed(state.iterations() * n * n);
}

}  // namespace

BENCHMARK(BM_SimulateSerial)->Args({100000, 0})->Args({100000, 1})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SimulateParallel)->Args({100000, 0})->Args({100000, 1})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepSerial)->Arg(101)->Arg(301)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Arg(101)->Arg(301)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
