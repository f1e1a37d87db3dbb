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

// Problem data for one operating day of a station-based shared EV fleet with
// plug-in charging, vehicle-to-grid and battery-to-grid selling, and battery
// swapping at upgradable stations.
//
// Time is a sequence of intervals 1..T. Battery state of charge is an integer
// level 0..L where one level is 100/L percent; every rate is a whole number of
// levels per interval.

#ifndef SEVPLAN_INSTANCE_H_
#define SEVPLAN_INSTANCE_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sevplan {

// Malformed input: carries the line (1-based, 0 if unknown) and field path.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, int line, std::string field)
      : std::runtime_error(message), line_(line), field_(std::move(field)) {}
  int line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  int line_;
  std::string field_;
};

// Well-formed input that violates a model invariant.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class StationKind {
  kParking,   // parking only
  kCharging,  // plug-in charging with V2G; candidate for swap upgrade
};

struct Station {
  int id = 0;  // 1-based, equal to position + 1
  StationKind kind = StationKind::kParking;
  int parking_spaces = 1;
  int locker_capacity = 0;  // stocked batteries storable once upgraded

  bool can_charge() const { return kind == StationKind::kCharging; }
};

struct EnergyGrid {
  int levels = 10;          // top level L; a level is 100/L percent
  int fast_rate = 4;        // levels per interval below the breakpoint
  int slow_rate = 1;        // levels per interval at or above it
  int breakpoint = 8;       // level where charging slows down
  int discharge_rate = 1;   // levels per interval while driving or selling
  double battery_kwh = 50;  // usable battery capacity
  // When set, a fast charge that would cross the breakpoint stops at it.
  bool clamp_at_breakpoint = false;

  double level_percent() const { return 100.0 / levels; }
  double level_kwh() const { return battery_kwh / levels; }

  // Intervals needed to charge from empty to full.
  int FullChargeIntervals() const;
};

// Level reached after one interval of charging from `level`.
int ChargeStep(int level, const EnergyGrid& grid);

struct Horizon {
  int intervals = 1;
  double minutes_per_interval = 15.0;
};

struct Costs {
  double rental_price = 0.0;         // revenue per interval of a rental
  double relocation_rate = 0.0;      // cost per interval of relocation travel
  double swap_cost = 0.0;            // per battery swap
  double battery_day = 0.0;          // per stocked battery
  double station_upgrade_day = 0.0;  // per upgraded station
  std::optional<double> vehicle_day;  // fleet-size objective only
};

struct DemandRecord {
  int origin = 0;
  int destination = 0;
  int depart = 0;
  int quantity = 0;
};

struct Instance {
  std::vector<Station> stations;
  std::vector<std::vector<int>> travel_time;  // [i-1][j-1], intervals
  Horizon horizon;
  EnergyGrid energy;
  std::vector<double> tariff;  // price per kWh for intervals 1..T
  std::vector<DemandRecord> demand;
  int fleet_size = 1;
  Costs costs;

  int num_stations() const { return static_cast<int>(stations.size()); }
  int num_intervals() const { return horizon.intervals; }
  int top_level() const { return energy.levels; }
  const Station& station(int id) const { return stations.at(id - 1); }
  int tau(int i, int j) const { return travel_time[i - 1][j - 1]; }
  double price(int t) const { return tariff.at(t - 1); }
  std::vector<int> charging_station_ids() const;
  int total_demand() const;

  // Throws ValidationError naming the first violated invariant.
  void Validate() const;
};

Instance LoadInstance(const std::filesystem::path& path);
Instance ParseInstance(const std::string& text);
std::string SerializeInstance(const Instance& instance);
void SaveInstance(const Instance& instance, const std::filesystem::path& path);

enum class ArcKind : std::uint8_t { kRent, kRelo, kIdle, kCharge, kSell, kSwap, kSource };
enum class Entity : std::uint8_t {
  kVehicle,
  kBattery,  // stocked battery flow in the compact model
  kBox,      // box state arc inside a chain
};

const char* ToString(ArcKind kind);
const char* ToString(Entity entity);

// Revenue (positive) or cost (negative) of one unit of flow. `interval` is
// the departure interval, `travel` the travel time of rent/relocation arcs.
// Swap cost sits on the vehicle arc in the compact model and on the box
// state arc in chains; stocked-battery swap arcs carry zero.
double ArcRevenueCost(ArcKind kind, Entity entity, int from_level, int to_level,
                      int interval, int travel, const Instance& instance);

struct GeneratorOptions {
  int max_travel_time = 4;
  double charging_share = 0.6;  // fraction of stations with chargers
  bool two_peak_demand = true;
  EnergyGrid energy{};
  int parking_spaces = 5;
  int locker_capacity = 5;
  std::optional<int> fleet_size;  // default: about one vehicle per 4 trips
  double minutes_per_interval = 15.0;
};

// Deterministic for a fixed (stations, intervals, demand, seed, options).
// `demand` counts individual trips; trips sharing (origin, destination,
// depart) are merged into one record.
Instance GenerateRandom(int num_stations, int num_intervals, int num_demand,
                        std::uint64_t seed, const GeneratorOptions& options = {});

}  // namespace sevplan

#endif  // SEVPLAN_INSTANCE_H_
