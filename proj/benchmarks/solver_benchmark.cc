// Copyright 2026 The sevplan Authors
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

#include <random>
#include <vector>

#include "benchmark/benchmark.h"
#include "sevplan/colgen.h"
#include "sevplan/compact.h"
#include "sevplan/instance.h"
#include "sevplan/lp.h"
#include "sevplan/network.h"

namespace sevplan {
namespace {

Instance Desk(int stations, int intervals, int demand) {
  GeneratorOptions options;
  options.parking_spaces = 4;
  options.locker_capacity = 3;
  options.energy.discharge_rate = 2;
  Instance inst = GenerateRandom(stations, intervals, demand, 1, options);
  inst.costs.swap_cost = 2;
  inst.costs.battery_day = 4;
  inst.costs.station_upgrade_day = 6;
  return inst;
}

void BM_BuildNetwork(benchmark::State& state) {
  const Instance inst = Desk(static_cast<int>(state.range(0)), 24, 100);
  for (auto _ : state) {
    StenaNetwork net = BuildNetwork(inst);
    benchmark::DoNotOptimize(net.num_arcs());
  }
}
BENCHMARK(BM_BuildNetwork)->Arg(5)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

// Dense random packing LP: max c.x subject to A x <= b, 0 <= x <= 1.
void BM_SolveLp(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  lp::LinearProgram lp;
  for (int j = 0; j < n; ++j) lp.AddVariable(u(rng), 0.0, 1.0);
  std::vector<int> indices(n);
  for (int j = 0; j < n; ++j) indices[j] = j;
  for (int r = 0; r < n / 2; ++r) {
    std::vector<double> values(n);
    for (double& v : values) v = u(rng);
    lp.AddRow(indices, values, lp::Relation::kLessEqual, n / 8.0);
  }
  for (auto _ : state) {
    const lp::LpSolution sol = lp::SolveLp(lp);
    benchmark::DoNotOptimize(sol.objective);
  }
}
BENCHMARK(BM_SolveLp)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_PriceStation(benchmark::State& state) {
  const Instance inst = Desk(6, static_cast<int>(state.range(0)), 60);
  const StenaNetwork net = BuildNetwork(inst);
  int station = 1;
  while (!inst.stations[station - 1].can_charge()) ++station;
  DualPack duals;
  duals.num_intervals = inst.num_intervals();
  duals.top_level = inst.top_level();
  duals.conservation.assign(net.num_nodes(), 0.0);
  duals.parking.assign(inst.num_stations() * inst.num_intervals(), 0.0);
  duals.locker.assign(inst.num_stations() + 1, 0.0);
  const int kappa = MaxKappa(inst);
  for (auto _ : state) {
    auto chains = PriceStation(net, inst, station, duals, kappa, 5);
    benchmark::DoNotOptimize(chains.size());
  }
}
BENCHMARK(BM_PriceStation)->Arg(12)->Arg(24)->Arg(48)->Unit(benchmark::kMicrosecond);

void BM_SolveExact(benchmark::State& state) {
  const Instance inst = Desk(static_cast<int>(state.range(0)), 10, 40);
  const StenaNetwork net = BuildNetwork(inst);
  for (auto _ : state) {
    const Solution sol = SolveExact(BuildCompact(net, inst), net, inst);
    benchmark::DoNotOptimize(sol.objective);
  }
}
BENCHMARK(BM_SolveExact)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_SolveCg(benchmark::State& state) {
  const Instance inst = Desk(static_cast<int>(state.range(0)), 10, 40);
  const StenaNetwork net = BuildNetwork(inst);
  for (auto _ : state) {
    const Solution sol = SolveCg(net, inst);
    benchmark::DoNotOptimize(sol.objective);
  }
}
BENCHMARK(BM_SolveCg)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace sevplan

BENCHMARK_MAIN();
