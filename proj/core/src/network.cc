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

#include "sevplan/network.h"

#include <algorithm>
#include <map>
#include <ostream>
#include <set>
#include <stdexcept>
#include <tuple>

namespace sevplan {
namespace {

int EntitySlot(Entity e) {
  if (e == Entity::kBox) throw std::invalid_argument("box arcs are not network arcs");
  return e == Entity::kVehicle ? 0 : 1;
}

Arc MakeTravelArc(const Instance& inst, ArcKind kind, int i, int j, int t, int e) {
  const int travel = inst.tau(i, j);
  const int r = e - inst.energy.discharge_rate * travel;
  Arc a;
  a.kind = kind;
  a.entity = Entity::kVehicle;
  a.from = {i, t, e};
  a.to = {j, t + travel, r};
  a.weight = ArcRevenueCost(kind, Entity::kVehicle, e, r, t, travel, inst);
  return a;
}

std::vector<Arc> RawTravelArcs(const Instance& inst, ArcKind kind) {
  std::vector<Arc> arcs;
  const int n = inst.num_stations();
  const int horizon = inst.num_intervals();
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      const int travel = inst.tau(i, j);
      const int min_level = inst.energy.discharge_rate * travel;
      for (int t = 1; t + travel <= horizon; ++t) {
        for (int e = min_level; e <= inst.top_level(); ++e) {
          arcs.push_back(MakeTravelArc(inst, kind, i, j, t, e));
        }
      }
    }
  }
  return arcs;
}

// Idle, charge, sell and swap arcs at one station for the given entity.
void AppendParkedArcs(const Instance& inst, int i, Entity entity,
                      std::vector<Arc>& out) {
  const int top = inst.top_level();
  const int horizon = inst.num_intervals();
  const bool charger = inst.station(i).can_charge();
  for (int t = 1; t + 1 <= horizon; ++t) {
    for (int e = 0; e <= top; ++e) {
      out.push_back({ArcKind::kIdle, entity, {i, t, e}, {i, t + 1, e}, 0.0, -1});
    }
    if (!charger) continue;
    for (int e = 0; e < top; ++e) {
      const int r = ChargeStep(e, inst.energy);
      out.push_back({ArcKind::kCharge, entity, {i, t, e}, {i, t + 1, r},
                     ArcRevenueCost(ArcKind::kCharge, entity, e, r, t, 0, inst), -1});
    }
    for (int e = inst.energy.discharge_rate; e <= top; ++e) {
      const int r = e - inst.energy.discharge_rate;
      out.push_back({ArcKind::kSell, entity, {i, t, e}, {i, t + 1, r},
                     ArcRevenueCost(ArcKind::kSell, entity, e, r, t, 0, inst), -1});
    }
    if (entity == Entity::kVehicle) {
      out.push_back({ArcKind::kSwap, entity, {i, t, 0}, {i, t + 1, top},
                     ArcRevenueCost(ArcKind::kSwap, entity, 0, top, t, 0, inst), -1});
    } else {
      out.push_back({ArcKind::kSwap, entity, {i, t, top}, {i, t + 1, 0},
                     ArcRevenueCost(ArcKind::kSwap, entity, top, 0, t, 0, inst), -1});
    }
  }
}

}  // namespace

int StenaNetwork::NodeId(const Node& node) const {
  if (node.is_source()) return 0;
  return 1 + ((node.station - 1) * num_intervals_ + (node.time - 1)) * (top_level_ + 1) +
         node.level;
}

Node StenaNetwork::NodeAt(int id) const {
  if (id == 0) return {0, 0, top_level_};
  const int k = id - 1;
  const int level = k % (top_level_ + 1);
  const int rest = k / (top_level_ + 1);
  return {rest / num_intervals_ + 1, rest % num_intervals_ + 1, level};
}

bool StenaNetwork::IsValid(const Node& node) const {
  if (node.is_source()) return node.time == 0 && node.level == top_level_;
  return node.station >= 1 && node.station <= num_stations_ && node.time >= 1 &&
         node.time <= num_intervals_ && node.level >= 0 && node.level <= top_level_;
}

ArcRange StenaNetwork::range(Entity entity, ArcKind kind) const {
  return ranges_[EntitySlot(entity)][static_cast<int>(kind)];
}

ArcRange StenaNetwork::range(Entity entity) const {
  return entity_ranges_[EntitySlot(entity)];
}

std::span<const int> StenaNetwork::OutArcs(Entity entity, int node_id) const {
  const Adjacency& a = adjacency_[EntitySlot(entity)];
  return {a.out_list.data() + a.out_start[node_id],
          a.out_list.data() + a.out_start[node_id + 1]};
}

std::span<const int> StenaNetwork::InArcs(Entity entity, int node_id) const {
  const Adjacency& a = adjacency_[EntitySlot(entity)];
  return {a.in_list.data() + a.in_start[node_id],
          a.in_list.data() + a.in_start[node_id + 1]};
}

void StenaNetwork::BuildAdjacency() {
  const int nodes = num_nodes();
  for (int slot = 0; slot < 2; ++slot) {
    Adjacency& adj = adjacency_[slot];
    const ArcRange r = entity_ranges_[slot];
    adj.out_start.assign(nodes + 1, 0);
    adj.in_start.assign(nodes + 1, 0);
    for (int a = r.begin; a < r.end; ++a) {
      ++adj.out_start[NodeId(arcs_[a].from) + 1];
      ++adj.in_start[NodeId(arcs_[a].to) + 1];
    }
    for (int v = 0; v < nodes; ++v) {
      adj.out_start[v + 1] += adj.out_start[v];
      adj.in_start[v + 1] += adj.in_start[v];
    }
    adj.out_list.assign(r.size(), 0);
    adj.in_list.assign(r.size(), 0);
    std::vector<int> out_fill(adj.out_start.begin(), adj.out_start.end() - 1);
    std::vector<int> in_fill(adj.in_start.begin(), adj.in_start.end() - 1);
    for (int a = r.begin; a < r.end; ++a) {
      adj.out_list[out_fill[NodeId(arcs_[a].from)]++] = a;
      adj.in_list[in_fill[NodeId(arcs_[a].to)]++] = a;
    }
  }
}

void StenaNetwork::Dump(std::ostream& out) const {
  for (const Arc& a : arcs_) {
    out << ToString(a.kind) << ' ' << ToString(a.entity) << ' ' << a.from.station
        << ' ' << a.from.time << ' ' << a.from.level << " -> " << a.to.station << ' '
        << a.to.time << ' ' << a.to.level << ' ' << a.weight << '\n';
  }
}

std::vector<Arc> RawRentalArcs(const Instance& inst) {
  return RawTravelArcs(inst, ArcKind::kRent);
}

std::vector<Arc> RawRelocationArcs(const Instance& inst) {
  return RawTravelArcs(inst, ArcKind::kRelo);
}

std::vector<Arc> PruneRentalArcs(const Instance& inst, std::vector<Arc> raw) {
  std::set<std::tuple<int, int, int>> requested;
  for (const DemandRecord& d : inst.demand) {
    if (d.quantity > 0) requested.insert({d.origin, d.destination, d.depart});
  }
  std::erase_if(raw, [&](const Arc& a) {
    return !requested.contains({a.from.station, a.to.station, a.from.time});
  });
  return raw;
}

std::vector<Arc> HubEliminateRelocations(const Instance& inst, std::vector<Arc> raw) {
  const int n = inst.num_stations();
  std::vector<std::vector<bool>> removable(n + 1, std::vector<bool>(n + 1, false));
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      for (int h = 1; h <= n; ++h) {
        if (h == i || h == j) continue;
        if (inst.tau(i, j) == inst.tau(i, h) + inst.tau(h, j)) {
          removable[i][j] = true;
          break;
        }
      }
    }
  }
  std::erase_if(raw, [&](const Arc& a) {
    return a.kind == ArcKind::kRelo && removable[a.from.station][a.to.station];
  });
  return raw;
}

std::vector<StateArc> BoxStateArcs(const Instance& inst, int station) {
  if (!inst.station(station).can_charge()) {
    throw std::invalid_argument("station " + std::to_string(station) +
                                " has no chargers; boxes need a charging station");
  }
  std::vector<Arc> parked;
  AppendParkedArcs(inst, station, Entity::kBattery, parked);
  std::vector<StateArc> states;
  states.reserve(parked.size());
  for (const Arc& a : parked) {
    StateArc s{a.kind, a.from.time, a.from.level, a.to.level, 0.0};
    s.weight = ArcRevenueCost(a.kind, Entity::kBox, a.from.level, a.to.level,
                              a.from.time, 0, inst);
    states.push_back(s);
  }
  return states;
}

StenaNetwork BuildNetwork(const Instance& inst, const NetworkOptions& options) {
  StenaNetwork net;
  net.num_stations_ = inst.num_stations();
  net.num_intervals_ = inst.num_intervals();
  net.top_level_ = inst.top_level();
  const int n = inst.num_stations();
  const int top = inst.top_level();

  std::vector<Arc> rent = RawRentalArcs(inst);
  if (options.prune_rentals) rent = PruneRentalArcs(inst, std::move(rent));
  std::vector<Arc> relo = RawRelocationArcs(inst);
  if (options.hub_elimination) relo = HubEliminateRelocations(inst, std::move(relo));

  // Demand capacities, summed over duplicate records.
  std::map<std::tuple<int, int, int>, int> capacity;
  for (const Arc& a : rent) capacity[{a.from.station, a.to.station, a.from.time}] += 0;
  for (const DemandRecord& d : inst.demand) {
    auto it = capacity.find({d.origin, d.destination, d.depart});
    if (it != capacity.end()) it->second += d.quantity;
  }
  std::map<std::tuple<int, int, int>, int> key_index;
  for (const auto& [key, cap] : capacity) {
    key_index[key] = static_cast<int>(net.demand_keys_.size());
    net.demand_keys_.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), cap});
  }
  for (Arc& a : rent) a.demand = key_index.at({a.from.station, a.to.station, a.from.time});

  std::vector<Arc> vehicle;
  vehicle.insert(vehicle.end(), rent.begin(), rent.end());
  vehicle.insert(vehicle.end(), relo.begin(), relo.end());
  std::vector<Arc> battery;
  for (int i = 1; i <= n; ++i) {
    AppendParkedArcs(inst, i, Entity::kVehicle, vehicle);
    if (inst.station(i).can_charge()) AppendParkedArcs(inst, i, Entity::kBattery, battery);
  }
  for (int i = 1; i <= n; ++i) {
    vehicle.push_back({ArcKind::kSource, Entity::kVehicle, {0, 0, top}, {i, 1, top}, 0.0, -1});
    if (inst.station(i).can_charge()) {
      battery.push_back({ArcKind::kSource, Entity::kBattery, {0, 0, top}, {i, 1, top}, 0.0, -1});
    }
  }

  // Arena layout: vehicle then battery, each grouped by kind in enum order.
  const auto place = [&](std::vector<Arc>& group, int slot) {
    std::stable_sort(group.begin(), group.end(), [](const Arc& a, const Arc& b) {
      return static_cast<int>(a.kind) < static_cast<int>(b.kind);
    });
    net.entity_ranges_[slot].begin = net.num_arcs();
    for (int k = 0; k < 7; ++k) {
      net.ranges_[slot][k].begin = net.num_arcs();
      for (const Arc& a : group) {
        if (static_cast<int>(a.kind) == k) net.arcs_.push_back(a);
      }
      net.ranges_[slot][k].end = net.num_arcs();
    }
    net.entity_ranges_[slot].end = net.num_arcs();
  };
  place(vehicle, 0);
  place(battery, 1);
  net.BuildAdjacency();

  const std::vector<int> chargers = inst.charging_station_ids();
  if (!chargers.empty()) net.box_template_ = BoxStateArcs(inst, chargers.front());
  return net;
}

}  // namespace sevplan
