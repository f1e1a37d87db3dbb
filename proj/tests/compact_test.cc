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

#include "sevplan/compact.h"

#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "brute_force.h"
#include "fixtures.h"
#include "gtest/gtest.h"
#include "nlohmann/json.hpp"
#include "sevplan/network.h"

namespace sevplan {
namespace {

using testing::HandInstance;

Solution Solve(const Instance& inst, const ModelOptions& options = {}) {
  const StenaNetwork net = BuildNetwork(inst);
  return SolveExact(BuildCompact(net, inst, options), net, inst);
}

int FindArc(const StenaNetwork& net, Entity entity, ArcKind kind, Node from, Node to) {
  const ArcRange r = net.range(entity, kind);
  for (int a = r.begin; a < r.end; ++a) {
    if (net.arc(a).from == from && net.arc(a).to == to) return a;
  }
  ADD_FAILURE() << "no such arc";
  return -1;
}

TEST(SolveExactTest, MatchesBruteForceOnTinyInstances) {
  int compared = 0;
  // The acceptance run covers the slower seeds.
  for (std::uint64_t seed : {1, 2, 3, 4, 5, 6, 7, 8, 10, 11, 13, 14}) {
    const Instance inst = testing::OracleInstance(seed);
    const testing::BruteForceResult oracle = testing::BruteForceOptimum(inst);
    const Solution sol = Solve(inst);
    if (!oracle.feasible) {
      EXPECT_FALSE(sol.has_solution) << "seed " << seed;
      continue;
    }
    ASSERT_TRUE(sol.proven_optimal) << "seed " << seed << " " << sol.status;
    EXPECT_NEAR(sol.objective, oracle.objective, 1e-6) << "seed " << seed;
    ++compared;
  }
  EXPECT_GE(compared, 10);
}

TEST(SolveExactTest, FleetDepreciationVariantMatchesBruteForce) {
  for (std::uint64_t seed = 20; seed <= 24; ++seed) {
    Instance inst = testing::OracleInstance(seed);
    inst.costs.vehicle_day = 7.5;
    const testing::BruteForceResult oracle = testing::BruteForceOptimum(inst, true);
    const Solution sol = Solve(inst, {.objective = ObjectiveVariant::kFleetDepreciation});
    ASSERT_EQ(sol.has_solution, oracle.feasible) << "seed " << seed;
    if (!oracle.feasible) continue;
    EXPECT_NEAR(sol.objective, oracle.objective, 1e-6) << "seed " << seed;
    EXPECT_NEAR(sol.evaluation.breakdown.vehicle_depreciation, 7.5 * inst.fleet_size, 1e-9);
  }
}

TEST(SolveExactTest, NoDemandKeepsBatteriesHome) {
  Instance inst = HandInstance(2, 4);
  inst.fleet_size = 2;
  const testing::BruteForceResult oracle = testing::BruteForceOptimum(inst);
  const Solution sol = Solve(inst);
  ASSERT_TRUE(sol.proven_optimal);
  EXPECT_NEAR(sol.objective, oracle.objective, 1e-6);
  EXPECT_EQ(sol.plan.stocked_batteries, 0);
  EXPECT_EQ(sol.evaluation.kpis.upgraded_stations, 0);
  EXPECT_EQ(sol.evaluation.breakdown.rental_revenue, 0.0);
  EXPECT_EQ(sol.evaluation.kpis.vehicle_moving_users, 0.0);
  EXPECT_EQ(sol.evaluation.kpis.vehicle_relocating, 0.0);
}

TEST(SolveExactTest, ZeroDemandFreeEnergyEarnsNothing) {
  Instance inst = HandInstance(3, 5);
  inst.tariff.assign(5, 0.0);
  const Solution sol = Solve(inst);
  ASSERT_TRUE(sol.proven_optimal);
  EXPECT_NEAR(sol.objective, 0.0, 1e-9);
  EXPECT_EQ(sol.plan.stocked_batteries, 0);
  for (size_t i = 1; i < sol.plan.upgraded.size(); ++i) EXPECT_FALSE(sol.plan.upgraded[i]);
}

// Batteries start full with no end-of-day level, so a flat positive price
// still pays for selling the starting charge: one level per interval.
TEST(SolveExactTest, ZeroDemandFlatPriceSellsStartingCharge) {
  Instance inst = HandInstance(3, 5);
  const double per_level = inst.energy.level_kwh() * 0.5;
  const double vehicle = (inst.num_intervals() - 1) * inst.energy.discharge_rate * per_level;
  // A stocked battery earns the same as a vehicle but costs more than that.
  ASSERT_LT(vehicle, inst.costs.battery_day + inst.costs.station_upgrade_day);
  const Solution sol = Solve(inst);
  ASSERT_TRUE(sol.proven_optimal);
  EXPECT_NEAR(sol.objective, inst.fleet_size * vehicle, 1e-9);
  EXPECT_EQ(sol.plan.stocked_batteries, 0);
  for (size_t i = 1; i < sol.plan.upgraded.size(); ++i) EXPECT_FALSE(sol.plan.upgraded[i]);
}

TEST(SolveExactTest, FleetAboveParkingIsInfeasible) {
  Instance inst = HandInstance(2, 4);
  inst.fleet_size = 5;  // two stations with two spaces each
  const Solution sol = Solve(inst);
  EXPECT_FALSE(sol.has_solution);
  EXPECT_EQ(sol.status, "infeasible");
}

TEST(SolveExactTest, IllustrationUpgradesOneStationWithOneBattery) {
  const Instance inst = testing::IllustrationInstance();
  const Solution sol = Solve(inst);
  ASSERT_TRUE(sol.proven_optimal);
  EXPECT_EQ(sol.plan.stocked_batteries, 1);
  EXPECT_EQ(sol.evaluation.kpis.upgraded_stations, 1);
  EXPECT_TRUE(sol.plan.upgraded[2]);
  EXPECT_EQ(sol.evaluation.kpis.total_requests, 6);
  // At most five requests fit a three-vehicle fleet here; see the fixture.
  EXPECT_EQ(sol.evaluation.kpis.served_requests, 5);
}

TEST(SolveExactTest, SingleSwapWhenOnlySwapReachesLateDemand) {
  // Two stations two intervals apart, two levels, one vehicle. Each trip
  // empties the battery; plugging in at t = 3 cannot refill it before the
  // second departure, a swap can.
  Instance inst = HandInstance(2, 7, 2);
  inst.energy.fast_rate = 1;
  inst.energy.slow_rate = 1;
  inst.energy.breakpoint = 1;
  inst.energy.discharge_rate = 1;
  inst.travel_time = {{0, 2}, {2, 0}};
  inst.stations[0].kind = StationKind::kParking;
  inst.stations[0].locker_capacity = 0;
  inst.demand = {{1, 2, 1, 1}, {2, 1, 5, 1}};
  inst.costs.rental_price = 100;
  inst.costs.battery_day = 0;
  inst.costs.station_upgrade_day = 0;
  inst.costs.swap_cost = 0;
  inst.tariff.assign(7, 0.0);
  const Solution sol = Solve(inst);
  ASSERT_TRUE(sol.proven_optimal);
  EXPECT_EQ(sol.evaluation.kpis.served_requests, 2);
  EXPECT_EQ(sol.evaluation.kpis.swaps, 1);
  EXPECT_NEAR(sol.objective, 400.0, 1e-6);
}

TEST(EvaluateSolutionTest, RecomputedObjectiveMatchesSolver) {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const Instance inst = testing::DeskInstance(seed, 4, 8, 16);
    const StenaNetwork net = BuildNetwork(inst);
    const Solution sol = SolveExact(BuildCompact(net, inst), net, inst);
    ASSERT_TRUE(sol.has_solution);
    EXPECT_NEAR(sol.objective, sol.solver_objective, 1e-6 * (1 + std::abs(sol.objective)));
    const Evaluation again = EvaluateSolution(net, inst, sol.plan);
    EXPECT_NEAR(again.objective, sol.solver_objective, 1e-6 * (1 + std::abs(sol.objective)));
    EXPECT_NEAR(again.breakdown.total(), again.objective, 1e-9);
    EXPECT_LE(sol.objective, sol.bound + 1e-6);
  }
}

TEST(EvaluateSolutionTest, KpiSharesCoverEveryVehicleInterval) {
  const Instance inst = testing::DeskInstance(5, 4, 8, 16);
  const Solution sol = Solve(inst);
  ASSERT_TRUE(sol.has_solution);
  const Kpis& k = sol.evaluation.kpis;
  EXPECT_NEAR(k.vehicle_moving_users + k.vehicle_relocating + k.vehicle_charging +
                  k.vehicle_selling + k.vehicle_swapping + k.vehicle_idle,
              1.0, 1e-9);
  if (k.stocked_batteries > 0) {
    EXPECT_NEAR(k.battery_charging + k.battery_selling + k.battery_swapping + k.battery_idle,
                1.0, 1e-9);
  }
  EXPECT_NEAR(k.service_rate,
              static_cast<double>(k.served_requests) / static_cast<double>(k.total_requests),
              1e-12);
}

// Two vehicles both take the single requested trip 1 -> 2 at t = 1.
TEST(EvaluateSolutionTest, ReportsExceededDemand) {
  Instance inst = HandInstance(2, 3);
  inst.fleet_size = 2;
  inst.demand = {{1, 2, 1, 1}};
  const StenaNetwork net = BuildNetwork(inst);
  FlowPlan plan;
  plan.flows.assign(net.num_arcs(), 0);
  plan.upgraded.assign(3, false);
  plan.flows[FindArc(net, Entity::kVehicle, ArcKind::kSource, {0, 0, 10}, {1, 1, 10})] = 2;
  plan.flows[FindArc(net, Entity::kVehicle, ArcKind::kRent, {1, 1, 10}, {2, 2, 9})] = 2;
  plan.flows[FindArc(net, Entity::kVehicle, ArcKind::kIdle, {2, 2, 9}, {2, 3, 9})] = 2;
  try {
    EvaluateSolution(net, inst, plan);
    FAIL() << "expected InfeasiblePlan";
  } catch (const InfeasiblePlan& e) {
    EXPECT_EQ(std::string(e.what()), "demand exceeded at (1,2,1)");
  }
  inst.demand[0].quantity = 2;
  const StenaNetwork wider = BuildNetwork(inst);
  EXPECT_NO_THROW(EvaluateSolution(wider, inst, plan));
}

TEST(EvaluateSolutionTest, ReportsBrokenConservation) {
  const Instance inst = HandInstance(2, 3);
  const StenaNetwork net = BuildNetwork(inst);
  FlowPlan plan;
  plan.flows.assign(net.num_arcs(), 0);
  plan.upgraded.assign(3, false);
  plan.flows[FindArc(net, Entity::kVehicle, ArcKind::kSource, {0, 0, 10}, {1, 1, 10})] = 1;
  EXPECT_THROW(EvaluateSolution(net, inst, plan), InfeasiblePlan);
}

TEST(ObjectiveGapPercentTest, RelativeToExactObjective) {
  EXPECT_NEAR(ObjectiveGapPercent(6138, 6021), 1.90, 0.01);
  EXPECT_NEAR(ObjectiveGapPercent(6138, 6021), 100.0 * 117 / 6138, 1e-12);
  EXPECT_DOUBLE_EQ(ObjectiveGapPercent(100, 100), 0.0);
  EXPECT_DOUBLE_EQ(ObjectiveGapPercent(0, 0), 0.0);
}

TEST(BuildCompactTest, PerBoxModelMatchesAggregate) {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    Instance inst = testing::OracleInstance(seed);
    for (Station& s : inst.stations) s.locker_capacity = 2;
    const Solution agg = Solve(inst);
    const Solution box = Solve(inst, {.batteries = BatteryModel::kPerBox});
    ASSERT_EQ(agg.has_solution, box.has_solution);
    if (!agg.has_solution) continue;
    EXPECT_NEAR(agg.objective, box.objective, 1e-6) << "seed " << seed;
  }
}

TEST(BuildCompactTest, OneColumnPerVehicleArcAndCharger) {
  Instance inst = HandInstance(3, 4);
  inst.stations[2].kind = StationKind::kParking;
  const StenaNetwork net = BuildNetwork(inst);
  const CompactModel model = BuildCompact(net, inst);
  std::map<int, int> owner;
  const ArcRange v = net.range(Entity::kVehicle);
  for (int a = v.begin; a < v.end; ++a) {
    ASSERT_GE(model.arc_column[a], 0);
    EXPECT_TRUE(owner.emplace(model.arc_column[a], a).second);
  }
  EXPECT_GE(model.upgrade_column[1], 0);
  EXPECT_GE(model.upgrade_column[2], 0);
  EXPECT_EQ(model.upgrade_column[3], -1);
  EXPECT_GE(model.stocked_column, 0);
}

TEST(SolutionToTextTest, EmitsReportKeys) {
  const Instance inst = testing::IllustrationInstance();
  const StenaNetwork net = BuildNetwork(inst);
  const Solution sol = SolveExact(BuildCompact(net, inst), net, inst);
  const nlohmann::json j = nlohmann::json::parse(SolutionToText(sol, net));
  for (const char* key : {"flows", "upgrades", "z", "stocked_per_station", "objective",
                          "breakdown", "kpis", "status", "bound"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["z"], 1);
  EXPECT_EQ(j["upgrades"], nlohmann::json::array({2}));
  EXPECT_NEAR(j["objective"].get<double>(), sol.objective, 1e-9);
  EXPECT_EQ(j["kpis"]["served_requests"], 5);
}

}  // namespace
}  // namespace sevplan
