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

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <tuple>

#include "json.hpp"
#include "model_rows.h"

namespace sevplan {
namespace {

using lp::Relation;

std::string Triple(int a, int b, int c) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
}

std::string Pair(int a, int b) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

// Collects one sparse row at a time.
struct RowBuilder {
  std::vector<int> idx;
  std::vector<double> val;
  void Add(int column, double coefficient) {
    idx.push_back(column);
    val.push_back(coefficient);
  }
  void Emit(lp::LinearProgram& lp, Relation rel, double rhs, std::string name) {
    lp.AddRow(idx, val, rel, rhs, std::move(name));
    idx.clear();
    val.clear();
  }
};

// Vehicle swap arc id per (station, t).
std::map<std::pair<int, int>, int> VehicleSwapArcs(const StenaNetwork& net) {
  std::map<std::pair<int, int>, int> out;
  const ArcRange r = net.range(Entity::kVehicle, ArcKind::kSwap);
  for (int a = r.begin; a < r.end; ++a) {
    out[{net.arc(a).from.station, net.arc(a).from.time}] = a;
  }
  return out;
}

}  // namespace

namespace internal {

VehicleRows AddVehicleRows(const StenaNetwork& net, const Instance& inst, RentalGate gate,
                           const std::vector<int>& col, lp::LinearProgram& lp) {
  const int n = inst.num_stations();
  const int horizon = inst.num_intervals();
  const int top = inst.top_level();
  VehicleRows rows;
  rows.conservation.assign(net.num_nodes(), -1);
  rows.parking.assign(n * horizon, -1);
  RowBuilder row;
  const auto add = [&](int a, double coefficient) {
    if (col[a] >= 0) row.Add(col[a], coefficient);
  };

  const ArcRange source = net.range(Entity::kVehicle, ArcKind::kSource);
  for (int a = source.begin; a < source.end; ++a) row.Add(col[a], 1.0);
  row.Emit(lp, Relation::kEqual, inst.fleet_size, "fleet");

  for (int i = 1; i <= n; ++i) {
    for (int t = 1; t <= horizon - 1; ++t) {
      for (int e = 0; e <= top; ++e) {
        const int v = net.NodeId({i, t, e});
        for (int a : net.InArcs(Entity::kVehicle, v)) add(a, 1.0);
        for (int a : net.OutArcs(Entity::kVehicle, v)) add(a, -1.0);
        if (row.idx.empty()) continue;
        rows.conservation[v] = lp.num_rows();
        row.Emit(lp, Relation::kEqual, 0.0, "cons_v_" + std::to_string(i) + "_" +
                                                std::to_string(t) + "_" + std::to_string(e));
      }
    }
  }

  const ArcRange rent = net.range(Entity::kVehicle, ArcKind::kRent);
  std::vector<std::vector<int>> by_key(net.demand_keys().size());
  for (int a = rent.begin; a < rent.end; ++a) by_key[net.arc(a).demand].push_back(a);
  for (size_t k = 0; k < by_key.size(); ++k) {
    const DemandKey& key = net.demand_keys()[k];
    for (int a : by_key[k]) row.Add(col[a], 1.0);
    row.Emit(lp, Relation::kLessEqual, key.capacity,
             "demand_" + std::to_string(key.origin) + "_" + std::to_string(key.destination) +
                 "_" + std::to_string(key.depart));
  }

  for (int i = 1; i <= n; ++i) {
    for (int t = 1; t <= horizon; ++t) {
      for (int e = 0; e <= top; ++e) {
        const int v = net.NodeId({i, t, e});
        bool has_rental = false;
        if (gate == RentalGate::kIdleInflow) {
          for (int a : net.OutArcs(Entity::kVehicle, v)) {
            if (net.arc(a).kind == ArcKind::kRent) {
              row.Add(col[a], 1.0);
              has_rental = true;
            }
          }
          if (!has_rental) {
            row.idx.clear();
            row.val.clear();
            continue;
          }
          for (int a : net.InArcs(Entity::kVehicle, v)) {
            const ArcKind k = net.arc(a).kind;
            if (k == ArcKind::kIdle || k == ArcKind::kSource) row.Add(col[a], -1.0);
          }
        } else {
          if (t == horizon) continue;
          for (int a : net.InArcs(Entity::kVehicle, v)) {
            if (net.arc(a).kind == ArcKind::kRent) {
              row.Add(col[a], 1.0);
              has_rental = true;
            }
          }
          if (!has_rental) {
            row.idx.clear();
            row.val.clear();
            continue;
          }
          for (int a : net.OutArcs(Entity::kVehicle, v)) {
            if (net.arc(a).kind == ArcKind::kIdle) row.Add(col[a], -1.0);
          }
        }
        row.Emit(lp, Relation::kLessEqual, 0.0,
                 "gate_" + std::to_string(i) + "_" + std::to_string(t) + "_" +
                     std::to_string(e));
      }
    }
  }

  for (int i = 1; i <= n; ++i) {
    for (int a = source.begin; a < source.end; ++a) {
      if (net.arc(a).to.station == i) row.Add(col[a], 1.0);
    }
    row.Emit(lp, Relation::kLessEqual, inst.station(i).parking_spaces,
             "park0_" + std::to_string(i));
  }
  for (int i = 1; i <= n; ++i) {
    for (int t = 1; t <= horizon - 1; ++t) {
      for (int e = 0; e <= top; ++e) {
        for (int a : net.OutArcs(Entity::kVehicle, net.NodeId({i, t, e}))) {
          if (IsParked(net.arc(a).kind)) add(a, 1.0);
        }
      }
      rows.parking[(i - 1) * horizon + (t - 1)] = lp.num_rows();
      row.Emit(lp, Relation::kLessEqual, inst.station(i).parking_spaces,
               "park_" + std::to_string(i) + "_" + std::to_string(t));
    }
  }
  return rows;
}

}  // namespace internal

double ObjectiveBreakdown::total() const {
  return rental_revenue + vehicle_sell_revenue + battery_sell_revenue - relocation_cost -
         vehicle_charging_cost - battery_charging_cost - swap_cost - battery_depreciation -
         upgrade_cost - vehicle_depreciation;
}

CompactModel BuildCompact(const StenaNetwork& net, const Instance& inst,
                          const ModelOptions& options) {
  CompactModel model;
  model.options = options;
  lp::LinearProgram& lp = model.mip.lp;
  const int n = inst.num_stations();
  const int horizon = inst.num_intervals();
  const int top = inst.top_level();
  const double fleet = inst.fleet_size;

  model.arc_column.assign(net.num_arcs(), -1);
  const ArcRange veh = net.range(Entity::kVehicle);
  for (int a = veh.begin; a < veh.end; ++a) {
    model.arc_column[a] = lp.AddVariable(net.arc(a).weight, 0.0, fleet, "x_" + std::to_string(a));
    model.mip.integer_variables.push_back(model.arc_column[a]);
  }

  int total_lockers = 0;
  model.upgrade_column.assign(n + 1, -1);
  for (int i : inst.charging_station_ids()) {
    model.upgrade_column[i] =
        lp.AddVariable(-inst.costs.station_upgrade_day, 0.0, 1.0, "s_" + std::to_string(i));
    model.mip.integer_variables.push_back(model.upgrade_column[i]);
    total_lockers += inst.station(i).locker_capacity;
  }
  model.stocked_column = lp.AddVariable(-inst.costs.battery_day, 0.0, total_lockers, "z");
  model.mip.integer_variables.push_back(model.stocked_column);

  const ArcRange bat = net.range(Entity::kBattery);
  if (options.batteries == BatteryModel::kAggregate) {
    for (int b = bat.begin; b < bat.end; ++b) {
      const Arc& arc = net.arc(b);
      const int station = arc.kind == ArcKind::kSource ? arc.to.station : arc.from.station;
      model.arc_column[b] = lp.AddVariable(arc.weight, 0.0,
                                           inst.station(station).locker_capacity,
                                           "y_" + std::to_string(b));
      model.mip.integer_variables.push_back(model.arc_column[b]);
    }
  } else {
    model.box_columns.assign(net.num_arcs(), {});
    for (int b = bat.begin; b < bat.end; ++b) {
      const Arc& arc = net.arc(b);
      const int station = arc.kind == ArcKind::kSource ? arc.to.station : arc.from.station;
      for (int k = 0; k < inst.station(station).locker_capacity; ++k) {
        const int c = lp.AddVariable(arc.weight, 0.0, 1.0,
                                     "v_" + std::to_string(b) + "_" + std::to_string(k));
        model.box_columns[b].push_back(c);
        model.mip.integer_variables.push_back(c);
      }
    }
  }
  if (options.objective == ObjectiveVariant::kFleetDepreciation) {
    lp.objective_offset = -inst.costs.vehicle_day.value_or(0.0) * fleet;
  }

  internal::AddVehicleRows(net, inst, options.rental_gate, model.arc_column, lp);

  RowBuilder row;
  const ArcRange bsource = net.range(Entity::kBattery, ArcKind::kSource);
  const auto swap_arcs = VehicleSwapArcs(net);
  if (options.batteries == BatteryModel::kAggregate) {
    const std::vector<int>& col = model.arc_column;
    for (int b = bsource.begin; b < bsource.end; ++b) row.Add(col[b], 1.0);
    row.Add(model.stocked_column, -1.0);
    row.Emit(lp, Relation::kEqual, 0.0, "stock");
    for (int i : inst.charging_station_ids()) {
      for (int t = 1; t <= horizon - 1; ++t) {
        for (int e = 0; e <= top; ++e) {
          const int v = net.NodeId({i, t, e});
          for (int b : net.InArcs(Entity::kBattery, v)) row.Add(col[b], 1.0);
          for (int b : net.OutArcs(Entity::kBattery, v)) row.Add(col[b], -1.0);
          if (row.idx.empty()) continue;
          row.Emit(lp, Relation::kEqual, 0.0, "cons_b_" + std::to_string(i) + "_" +
                                                  std::to_string(t) + "_" + std::to_string(e));
        }
      }
    }
    for (int b = bsource.begin; b < bsource.end; ++b) {
      const int i = net.arc(b).to.station;
      row.Add(col[b], 1.0);
      row.Add(model.upgrade_column[i], -inst.station(i).locker_capacity);
      row.Emit(lp, Relation::kLessEqual, 0.0, "locker_" + std::to_string(i));
    }
    const ArcRange bswap = net.range(Entity::kBattery, ArcKind::kSwap);
    for (int b = bswap.begin; b < bswap.end; ++b) {
      const Arc& arc = net.arc(b);
      row.Add(col[swap_arcs.at({arc.from.station, arc.from.time})], 1.0);
      row.Add(col[b], -1.0);
      row.Emit(lp, Relation::kEqual, 0.0,
               "pair_" + std::to_string(arc.from.station) + "_" + std::to_string(arc.from.time));
    }
    return model;
  }

  const auto& boxes = model.box_columns;
  for (int b = bsource.begin; b < bsource.end; ++b) {
    for (int c : boxes[b]) row.Add(c, 1.0);
  }
  row.Add(model.stocked_column, -1.0);
  row.Emit(lp, Relation::kEqual, 0.0, "stock");
  for (int i : inst.charging_station_ids()) {
    const int capacity = inst.station(i).locker_capacity;
    for (int k = 0; k < capacity; ++k) {
      for (int t = 1; t <= horizon - 1; ++t) {
        for (int e = 0; e <= top; ++e) {
          const int v = net.NodeId({i, t, e});
          for (int b : net.InArcs(Entity::kBattery, v)) row.Add(boxes[b][k], 1.0);
          for (int b : net.OutArcs(Entity::kBattery, v)) row.Add(boxes[b][k], -1.0);
          if (row.idx.empty()) continue;
          row.Emit(lp, Relation::kEqual, 0.0,
                   "cons_box_" + std::to_string(i) + "_" + std::to_string(k) + "_" +
                       std::to_string(t) + "_" + std::to_string(e));
        }
      }
    }
  }
  for (int b = bsource.begin; b < bsource.end; ++b) {
    const int i = net.arc(b).to.station;
    for (size_t k = 0; k < boxes[b].size(); ++k) {
      row.Add(boxes[b][k], 1.0);
      row.Add(model.upgrade_column[i], -1.0);
      row.Emit(lp, Relation::kLessEqual, 0.0,
               "box_open_" + std::to_string(i) + "_" + std::to_string(k));
    }
  }
  const ArcRange bswap = net.range(Entity::kBattery, ArcKind::kSwap);
  for (int b = bswap.begin; b < bswap.end; ++b) {
    const Arc& arc = net.arc(b);
    row.Add(model.arc_column[swap_arcs.at({arc.from.station, arc.from.time})], 1.0);
    for (int c : boxes[b]) row.Add(c, -1.0);
    row.Emit(lp, Relation::kEqual, 0.0,
             "pair_" + std::to_string(arc.from.station) + "_" + std::to_string(arc.from.time));
  }
  return model;
}

Evaluation EvaluateSolution(const StenaNetwork& net, const Instance& inst,
                            const FlowPlan& plan, const ModelOptions& options) {
  const int n = inst.num_stations();
  const int horizon = inst.num_intervals();
  const int top = inst.top_level();
  const auto& x = plan.flows;
  if (static_cast<int>(x.size()) != net.num_arcs()) {
    throw InfeasiblePlan("flow vector has " + std::to_string(x.size()) + " entries for " +
                         std::to_string(net.num_arcs()) + " arcs");
  }
  for (int a = 0; a < net.num_arcs(); ++a) {
    if (x[a] < 0) throw InfeasiblePlan("negative flow on arc " + std::to_string(a));
  }
  const auto upgraded = [&](int i) {
    return i < static_cast<int>(plan.upgraded.size()) && plan.upgraded[i];
  };
  for (int i = 1; i < static_cast<int>(plan.upgraded.size()); ++i) {
    if (plan.upgraded[i] && !inst.station(i).can_charge()) {
      throw InfeasiblePlan("upgrade at station " + std::to_string(i) + " without chargers");
    }
  }

  const ArcRange vsource = net.range(Entity::kVehicle, ArcKind::kSource);
  std::int64_t placed = 0;
  for (int a = vsource.begin; a < vsource.end; ++a) placed += x[a];
  if (placed != inst.fleet_size) {
    throw InfeasiblePlan("fleet size violated: " + std::to_string(placed) + " vehicles placed, " +
                         std::to_string(inst.fleet_size) + " required");
  }

  for (Entity entity : {Entity::kVehicle, Entity::kBattery}) {
    for (int i = 1; i <= n; ++i) {
      for (int t = 1; t <= horizon - 1; ++t) {
        for (int e = 0; e <= top; ++e) {
          const int v = net.NodeId({i, t, e});
          std::int64_t balance = 0;
          for (int a : net.InArcs(entity, v)) balance += x[a];
          for (int a : net.OutArcs(entity, v)) balance -= x[a];
          if (balance != 0) {
            throw InfeasiblePlan(std::string(entity == Entity::kVehicle ? "vehicle" : "battery") +
                                 " conservation violated at " + Triple(i, t, e));
          }
        }
      }
    }
  }

  const ArcRange rent = net.range(Entity::kVehicle, ArcKind::kRent);
  std::vector<std::int64_t> served(net.demand_keys().size(), 0);
  for (int a = rent.begin; a < rent.end; ++a) served[net.arc(a).demand] += x[a];
  for (size_t k = 0; k < served.size(); ++k) {
    const DemandKey& key = net.demand_keys()[k];
    if (served[k] > key.capacity) {
      throw InfeasiblePlan("demand exceeded at " +
                           Triple(key.origin, key.destination, key.depart));
    }
  }

  for (int i = 1; i <= n; ++i) {
    for (int t = 1; t <= horizon; ++t) {
      for (int e = 0; e <= top; ++e) {
        const int v = net.NodeId({i, t, e});
        std::int64_t rentals = 0;
        std::int64_t allowed = 0;
        if (options.rental_gate == RentalGate::kIdleInflow) {
          for (int a : net.OutArcs(Entity::kVehicle, v)) {
            if (net.arc(a).kind == ArcKind::kRent) rentals += x[a];
          }
          for (int a : net.InArcs(Entity::kVehicle, v)) {
            const ArcKind k = net.arc(a).kind;
            if (k == ArcKind::kIdle || k == ArcKind::kSource) allowed += x[a];
          }
        } else {
          if (t == horizon) continue;
          for (int a : net.InArcs(Entity::kVehicle, v)) {
            if (net.arc(a).kind == ArcKind::kRent) rentals += x[a];
          }
          for (int a : net.OutArcs(Entity::kVehicle, v)) {
            if (net.arc(a).kind == ArcKind::kIdle) allowed += x[a];
          }
        }
        if (rentals > allowed) {
          throw InfeasiblePlan("rental gate violated at " + Triple(i, t, e));
        }
      }
    }
  }

  std::vector<std::int64_t> initial(n + 1, 0);
  for (int a = vsource.begin; a < vsource.end; ++a) initial[net.arc(a).to.station] += x[a];
  for (int i = 1; i <= n; ++i) {
    if (initial[i] > inst.station(i).parking_spaces) {
      throw InfeasiblePlan("parking capacity exceeded at " + Pair(i, 1) + " by initial placement");
    }
    for (int t = 1; t <= horizon - 1; ++t) {
      std::int64_t parked = 0;
      for (int e = 0; e <= top; ++e) {
        for (int a : net.OutArcs(Entity::kVehicle, net.NodeId({i, t, e}))) {
          if (internal::IsParked(net.arc(a).kind)) parked += x[a];
        }
      }
      if (parked > inst.station(i).parking_spaces) {
        throw InfeasiblePlan("parking capacity exceeded at " + Pair(i, t));
      }
    }
  }

  const ArcRange bsource = net.range(Entity::kBattery, ArcKind::kSource);
  std::int64_t stocked = 0;
  for (int b = bsource.begin; b < bsource.end; ++b) {
    stocked += x[b];
    const int i = net.arc(b).to.station;
    const std::int64_t cap = upgraded(i) ? inst.station(i).locker_capacity : 0;
    if (x[b] > cap) {
      throw InfeasiblePlan("locker capacity violated at station " + std::to_string(i) +
                           (upgraded(i) ? "" : " (not upgraded)"));
    }
  }
  if (stocked != plan.stocked_batteries) {
    throw InfeasiblePlan("stocked battery count violated: flows place " +
                         std::to_string(stocked) + ", z = " +
                         std::to_string(plan.stocked_batteries));
  }

  std::map<std::pair<int, int>, std::int64_t> swap_balance;
  const ArcRange vswap = net.range(Entity::kVehicle, ArcKind::kSwap);
  for (int a = vswap.begin; a < vswap.end; ++a) {
    swap_balance[{net.arc(a).from.station, net.arc(a).from.time}] += x[a];
  }
  const ArcRange bswap = net.range(Entity::kBattery, ArcKind::kSwap);
  for (int b = bswap.begin; b < bswap.end; ++b) {
    swap_balance[{net.arc(b).from.station, net.arc(b).from.time}] -= x[b];
  }
  for (const auto& [key, balance] : swap_balance) {
    if (balance != 0) throw InfeasiblePlan("swap pairing violated at " + Pair(key.first, key.second));
  }

  // Objective and KPIs.
  Evaluation ev;
  ObjectiveBreakdown& br = ev.breakdown;
  Kpis& k = ev.kpis;
  const double minutes = inst.horizon.minutes_per_interval;
  const int hours = std::max(1, static_cast<int>(std::ceil(horizon * minutes / 60.0 - 1e-9)));
  k.hourly.resize(hours);
  for (int h = 0; h < hours; ++h) k.hourly[h].hour = h;
  const auto hour_of = [&](int t) {
    return std::min(hours - 1, static_cast<int>(std::floor((t - 1) * minutes / 60.0 + 1e-9)));
  };
  const double kwh = inst.energy.level_kwh();

  double vehicle_time[7] = {0, 0, 0, 0, 0, 0, 0};
  double battery_time[7] = {0, 0, 0, 0, 0, 0, 0};
  double trip_minutes = 0.0;
  for (int a = 0; a < net.num_arcs(); ++a) {
    if (x[a] == 0) continue;
    const Arc& arc = net.arc(a);
    const double f = static_cast<double>(x[a]);
    const double value = arc.weight * f;
    const bool vehicle = arc.entity == Entity::kVehicle;
    const int kind = static_cast<int>(arc.kind);
    if (arc.kind != ArcKind::kSource) {
      (vehicle ? vehicle_time : battery_time)[kind] += f * arc.travel();
    }
    switch (arc.kind) {
      case ArcKind::kRent:
        br.rental_revenue += value;
        k.served_requests += x[a];
        trip_minutes += f * arc.travel() * minutes;
        break;
      case ArcKind::kRelo:
        br.relocation_cost -= value;
        break;
      case ArcKind::kCharge: {
        (vehicle ? br.vehicle_charging_cost : br.battery_charging_cost) -= value;
        const double energy = f * kwh * (arc.to.level - arc.from.level);
        HourlyEnergy& slot = k.hourly[hour_of(arc.from.time)];
        (vehicle ? slot.vehicle_charge_kwh : slot.battery_charge_kwh) += energy;
        break;
      }
      case ArcKind::kSell: {
        (vehicle ? br.vehicle_sell_revenue : br.battery_sell_revenue) += value;
        const double energy = f * kwh * (arc.from.level - arc.to.level);
        HourlyEnergy& slot = k.hourly[hour_of(arc.from.time)];
        (vehicle ? slot.vehicle_sell_kwh : slot.battery_sell_kwh) += energy;
        break;
      }
      case ArcKind::kSwap:
        br.swap_cost -= value;
        if (vehicle) k.swaps += x[a];
        break;
      case ArcKind::kIdle:
      case ArcKind::kSource:
        break;
    }
  }
  int upgrades = 0;
  for (int i = 1; i <= n; ++i) upgrades += upgraded(i) ? 1 : 0;
  br.battery_depreciation = inst.costs.battery_day * plan.stocked_batteries;
  br.upgrade_cost = inst.costs.station_upgrade_day * upgrades;
  if (options.objective == ObjectiveVariant::kFleetDepreciation) {
    br.vehicle_depreciation = inst.costs.vehicle_day.value_or(0.0) * inst.fleet_size;
  }
  ev.objective = br.total();

  k.total_requests = inst.total_demand();
  k.service_rate = k.total_requests > 0
                       ? static_cast<double>(k.served_requests) / k.total_requests
                       : 0.0;
  k.stocked_batteries = plan.stocked_batteries;
  k.upgraded_stations = upgrades;
  k.average_trip_minutes = k.served_requests > 0 ? trip_minutes / k.served_requests : 0.0;
  const double vehicle_total = static_cast<double>(inst.fleet_size) * (horizon - 1);
  if (vehicle_total > 0) {
    const auto share = [&](ArcKind kind) {
      return vehicle_time[static_cast<int>(kind)] / vehicle_total;
    };
    k.vehicle_moving_users = share(ArcKind::kRent);
    k.vehicle_relocating = share(ArcKind::kRelo);
    k.vehicle_charging = share(ArcKind::kCharge);
    k.vehicle_selling = share(ArcKind::kSell);
    k.vehicle_swapping = share(ArcKind::kSwap);
    k.vehicle_idle = share(ArcKind::kIdle);
  }
  const double battery_total = static_cast<double>(plan.stocked_batteries) * (horizon - 1);
  if (battery_total > 0) {
    const auto share = [&](ArcKind kind) {
      return battery_time[static_cast<int>(kind)] / battery_total;
    };
    k.battery_charging = share(ArcKind::kCharge);
    k.battery_selling = share(ArcKind::kSell);
    k.battery_swapping = share(ArcKind::kSwap);
    k.battery_idle = share(ArcKind::kIdle);
  }
  return ev;
}

Solution SolveExact(const CompactModel& model, const StenaNetwork& net, const Instance& inst,
                    const SolveLimits& limits) {
  lp::MipOptions options;
  options.time_limit_seconds = limits.time_limit_seconds;
  options.relative_gap = limits.gap_limit;
  options.node_limit = limits.node_limit;
  const lp::MipResult result = lp::SolveMip(model.mip, options);

  Solution sol;
  sol.status = lp::ToString(result.status);
  sol.bound = result.bound;
  sol.seconds = result.seconds;
  sol.nodes = result.nodes;
  sol.proven_optimal = result.proven_optimal;
  if (!result.has_incumbent) return sol;

  const auto value = [&](int column) { return std::llround(result.primal[column]); };
  const int n = inst.num_stations();
  FlowPlan& plan = sol.plan;
  plan.flows.assign(net.num_arcs(), 0);
  for (int a = 0; a < net.num_arcs(); ++a) {
    if (model.arc_column[a] >= 0) plan.flows[a] = value(model.arc_column[a]);
    if (!model.box_columns.empty()) {
      for (int c : model.box_columns[a]) plan.flows[a] += value(c);
    }
  }
  plan.upgraded.assign(n + 1, false);
  for (int i = 1; i <= n; ++i) {
    if (model.upgrade_column[i] >= 0) plan.upgraded[i] = value(model.upgrade_column[i]) == 1;
  }
  plan.stocked_batteries = value(model.stocked_column);

  sol.evaluation = EvaluateSolution(net, inst, plan, model.options);
  sol.objective = sol.evaluation.objective;
  sol.solver_objective = result.objective;
  sol.has_solution = true;
  return sol;
}

double ObjectiveGapPercent(double exact, double heuristic) {
  if (exact == 0.0) return heuristic == 0.0 ? 0.0 : 100.0;
  return (exact - heuristic) / exact * 100.0;
}

std::string SolutionToText(const Solution& sol, const StenaNetwork& net) {
  nlohmann::ordered_json out;
  nlohmann::ordered_json flows = nlohmann::ordered_json::array();
  if (sol.has_solution) {
    for (int a = 0; a < net.num_arcs(); ++a) {
      if (sol.plan.flows[a] == 0) continue;
      const Arc& arc = net.arc(a);
      std::ostringstream desc;
      desc << ToString(arc.kind) << ' ' << ToString(arc.entity) << ' ' << arc.from.station << ' '
           << arc.from.time << ' ' << arc.from.level << " -> " << arc.to.station << ' '
           << arc.to.time << ' ' << arc.to.level;
      flows.push_back({{"arc", desc.str()}, {"value", sol.plan.flows[a]}});
    }
  }
  out["flows"] = flows;
  nlohmann::ordered_json upgrades = nlohmann::ordered_json::array();
  nlohmann::ordered_json stocked = nlohmann::ordered_json::object();
  if (sol.has_solution) {
    for (size_t i = 1; i < sol.plan.upgraded.size(); ++i) {
      if (sol.plan.upgraded[i]) upgrades.push_back(i);
    }
    const ArcRange bsource = net.range(Entity::kBattery, ArcKind::kSource);
    for (int b = bsource.begin; b < bsource.end; ++b) {
      if (sol.plan.flows[b] > 0) {
        stocked[std::to_string(net.arc(b).to.station)] = sol.plan.flows[b];
      }
    }
  }
  out["upgrades"] = upgrades;
  out["z"] = sol.plan.stocked_batteries;
  out["stocked_per_station"] = stocked;
  out["objective"] = sol.objective;
  const ObjectiveBreakdown& b = sol.evaluation.breakdown;
  out["breakdown"] = {
      {"rental_revenue", b.rental_revenue},
      {"vehicle_sell_revenue", b.vehicle_sell_revenue},
      {"battery_sell_revenue", b.battery_sell_revenue},
      {"relocation_cost", b.relocation_cost},
      {"vehicle_charging_cost", b.vehicle_charging_cost},
      {"battery_charging_cost", b.battery_charging_cost},
      {"swap_cost", b.swap_cost},
      {"battery_depreciation", b.battery_depreciation},
      {"upgrade_cost", b.upgrade_cost},
      {"vehicle_depreciation", b.vehicle_depreciation},
  };
  const Kpis& k = sol.evaluation.kpis;
  nlohmann::ordered_json hourly = nlohmann::ordered_json::array();
  for (const HourlyEnergy& h : k.hourly) {
    hourly.push_back({{"hour", h.hour},
                      {"vehicle_charge_kwh", h.vehicle_charge_kwh},
                      {"vehicle_sell_kwh", h.vehicle_sell_kwh},
                      {"battery_charge_kwh", h.battery_charge_kwh},
                      {"battery_sell_kwh", h.battery_sell_kwh}});
  }
  out["kpis"] = {
      {"served_requests", k.served_requests},
      {"total_requests", k.total_requests},
      {"service_rate", k.service_rate},
      {"swaps", k.swaps},
      {"stocked_batteries", k.stocked_batteries},
      {"upgraded_stations", k.upgraded_stations},
      {"average_trip_minutes", k.average_trip_minutes},
      {"vehicle_moving_users", k.vehicle_moving_users},
      {"vehicle_relocating", k.vehicle_relocating},
      {"vehicle_charging", k.vehicle_charging},
      {"vehicle_selling", k.vehicle_selling},
      {"vehicle_swapping", k.vehicle_swapping},
      {"vehicle_idle", k.vehicle_idle},
      {"battery_charging", k.battery_charging},
      {"battery_selling", k.battery_selling},
      {"battery_swapping", k.battery_swapping},
      {"battery_idle", k.battery_idle},
      {"hourly", hourly},
  };
  out["status"] = sol.status;
  out["proven_optimal"] = sol.proven_optimal;
  out["bound"] = sol.bound;
  out["seconds"] = sol.seconds;
  return out.dump(2) + "\n";
}

}  // namespace sevplan
