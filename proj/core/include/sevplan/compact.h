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

// The exact integer program over the space-time-energy network, the
// independent solution evaluator, and the solution report.

#ifndef SEVPLAN_COMPACT_H_
#define SEVPLAN_COMPACT_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "sevplan/instance.h"
#include "sevplan/lp.h"
#include "sevplan/network.h"

namespace sevplan {

enum class ObjectiveVariant {
  kProfit,         // operating profit
  kFleetDepreciation,  // profit minus vehicle_day * fleet size
};

// Which vehicles may start a rental at node (i, t, e).
enum class RentalGate {
  // Rentals leaving (i, t, e) are bounded by vehicles that idled into it (or
  // were placed there at the start of the day).
  kIdleInflow,
  // Rentals arriving at (i, t, e) are bounded by idle arcs leaving it.
  kLiteral,
};

enum class BatteryModel {
  kAggregate,  // one integer flow per stocked-battery arc
  kPerBox,     // one binary flow per box and state arc
};

struct ModelOptions {
  ObjectiveVariant objective = ObjectiveVariant::kProfit;
  RentalGate rental_gate = RentalGate::kIdleInflow;
  BatteryModel batteries = BatteryModel::kAggregate;
};

struct CompactModel {
  lp::MixedIntegerProgram mip;
  ModelOptions options;
  std::vector<int> arc_column;      // network arc id -> column, -1 if none
  std::vector<int> upgrade_column;  // station id -> column, -1 if not upgradable
  int stocked_column = -1;
  // kPerBox only: network battery arc id -> one column per box.
  std::vector<std::vector<int>> box_columns;
};

CompactModel BuildCompact(const StenaNetwork& network, const Instance& instance,
                          const ModelOptions& options = {});

struct SolveLimits {
  double time_limit_seconds = 600.0;
  double gap_limit = 1e-9;  // relative
  std::int64_t node_limit = 0;
};

// Arc flows plus the strategic decisions they imply.
struct FlowPlan {
  std::vector<std::int64_t> flows;  // per network arc
  std::vector<bool> upgraded;       // index station id; [0] unused
  std::int64_t stocked_batteries = 0;
};

struct ObjectiveBreakdown {
  double rental_revenue = 0.0;
  double vehicle_sell_revenue = 0.0;
  double battery_sell_revenue = 0.0;
  double relocation_cost = 0.0;
  double vehicle_charging_cost = 0.0;
  double battery_charging_cost = 0.0;
  double swap_cost = 0.0;
  double battery_depreciation = 0.0;
  double upgrade_cost = 0.0;
  double vehicle_depreciation = 0.0;

  double total() const;
};

struct HourlyEnergy {
  int hour = 0;  // 0-based hour since the start of the horizon
  double vehicle_charge_kwh = 0.0;
  double vehicle_sell_kwh = 0.0;
  double battery_charge_kwh = 0.0;
  double battery_sell_kwh = 0.0;
};

struct Kpis {
  std::int64_t served_requests = 0;
  std::int64_t total_requests = 0;
  double service_rate = 0.0;
  std::int64_t swaps = 0;
  std::int64_t stocked_batteries = 0;
  int upgraded_stations = 0;
  double average_trip_minutes = 0.0;
  // Shares of fleet_size * (T - 1) vehicle-intervals.
  double vehicle_moving_users = 0.0;
  double vehicle_relocating = 0.0;
  double vehicle_charging = 0.0;
  double vehicle_selling = 0.0;
  double vehicle_swapping = 0.0;
  double vehicle_idle = 0.0;
  // Shares of stocked_batteries * (T - 1) battery-intervals.
  double battery_charging = 0.0;
  double battery_selling = 0.0;
  double battery_swapping = 0.0;
  double battery_idle = 0.0;
  std::vector<HourlyEnergy> hourly;
};

struct Evaluation {
  double objective = 0.0;
  ObjectiveBreakdown breakdown;
  Kpis kpis;
};

// A plan that violates a model constraint. The message names the constraint
// family and its index, e.g. "demand exceeded at (1,2,3)".
class InfeasiblePlan : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Recomputes objective and KPIs from flows alone, after checking every
// constraint family of the compact model.
Evaluation EvaluateSolution(const StenaNetwork& network, const Instance& instance,
                            const FlowPlan& plan, const ModelOptions& options = {});

struct Solution {
  FlowPlan plan;
  Evaluation evaluation;
  double objective = 0.0;  // recomputed, equals evaluation.objective
  double solver_objective = 0.0;
  double bound = 0.0;
  bool has_solution = false;
  bool proven_optimal = false;
  std::string status;
  double seconds = 0.0;
  std::int64_t nodes = 0;
};

// Solves the model to optimality (or the limits). When no incumbent exists the
// returned Solution has has_solution == false and status explains why.
Solution SolveExact(const CompactModel& model, const StenaNetwork& network,
                    const Instance& instance, const SolveLimits& limits = {});

// (exact - heuristic) / exact * 100.
double ObjectiveGapPercent(double exact, double heuristic);

// Structured text with flows, upgrades, z, objective, breakdown and kpis.
std::string SolutionToText(const Solution& solution, const StenaNetwork& network);

}  // namespace sevplan

#endif  // SEVPLAN_COMPACT_H_
