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

#include "fixtures.h"

#include <random>

namespace sevplan::testing {

std::string DataPath(const std::string& file) {
  return std::string(SEVPLAN_TEST_DATA_DIR) + "/" + file;
}

Instance HandInstance(int stations, int intervals, int levels) {
  Instance inst;
  for (int i = 1; i <= stations; ++i) {
    inst.stations.push_back({i, StationKind::kCharging, 2, 1});
  }
  inst.travel_time.assign(stations, std::vector<int>(stations, 1));
  for (int i = 0; i < stations; ++i) inst.travel_time[i][i] = 0;
  inst.horizon.intervals = intervals;
  inst.energy.levels = levels;
  inst.energy.fast_rate = std::max(1, levels * 4 / 10);
  inst.energy.slow_rate = std::max(1, levels / 10);
  inst.energy.breakpoint = std::max(1, levels * 8 / 10);
  inst.energy.discharge_rate = std::max(1, levels / 10);
  inst.tariff.assign(intervals, 0.5);
  inst.fleet_size = 1;
  inst.costs.rental_price = 10;
  inst.costs.relocation_rate = 3;
  inst.costs.swap_cost = 5;
  inst.costs.battery_day = 15;
  inst.costs.station_upgrade_day = 25;
  return inst;
}

Instance OracleInstance(std::uint64_t seed) {
  std::mt19937_64 rng(seed * 7919 + 17);
  const auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  GeneratorOptions options;
  const int levels = pick(3, 5);
  options.energy.levels = levels;
  options.energy.fast_rate = 2;
  options.energy.slow_rate = 1;
  options.energy.breakpoint = levels - 1;
  options.energy.discharge_rate = 1;
  options.max_travel_time = 2;
  options.parking_spaces = pick(1, 2);
  options.locker_capacity = 1;
  options.charging_share = 0.6;
  const int stations = pick(2, 4);
  const int intervals = pick(4, 6);
  const int demand = pick(2, 3 * stations);
  options.fleet_size = std::min(pick(1, 3), stations * options.parking_spaces);
  Instance inst = GenerateRandom(stations, intervals, demand, seed, options);
  if (seed % 2 == 0) {
    inst.costs.swap_cost = 1;
    inst.costs.battery_day = 2;
    inst.costs.station_upgrade_day = 3;
  }
  return inst;
}

Instance DeskInstance(std::uint64_t seed, int stations, int intervals, int demand) {
  GeneratorOptions options;
  options.parking_spaces = 4;
  options.locker_capacity = 3;
  options.energy.discharge_rate = 2;
  Instance inst = GenerateRandom(stations, intervals, demand, seed, options);
  inst.costs.swap_cost = 2;
  inst.costs.battery_day = 4;
  inst.costs.station_upgrade_day = 6;
  return inst;
}

Instance IllustrationInstance() { return LoadInstance(DataPath("illustration.json")); }

}  // namespace sevplan::testing
