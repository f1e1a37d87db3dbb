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

// Space-time-energy network: nodes are (station, interval, level) triples plus
// a virtual source (0, 0, L). Vehicle and stocked-battery activities are typed
// arcs between them.

#ifndef SEVPLAN_NETWORK_H_
#define SEVPLAN_NETWORK_H_

#include <iosfwd>
#include <span>
#include <vector>

#include "sevplan/instance.h"

namespace sevplan {

struct Node {
  int station = 0;  // 0 for the source
  int time = 0;     // 0 for the source
  int level = 0;

  bool is_source() const { return station == 0; }
  friend bool operator==(const Node&, const Node&) = default;
};

struct Arc {
  ArcKind kind = ArcKind::kIdle;
  Entity entity = Entity::kVehicle;
  Node from;
  Node to;
  double weight = 0.0;  // revenue (+) or cost (-) per unit of flow
  int demand = -1;      // index into StenaNetwork::demand_keys() for rentals

  int travel() const { return to.time - from.time; }
};

// Aggregated rental capacity for one (origin, destination, depart) triple.
struct DemandKey {
  int origin = 0;
  int destination = 0;
  int depart = 0;
  int capacity = 0;
};

// One box state transition between intervals `time` and `time + 1`.
struct StateArc {
  ArcKind kind = ArcKind::kIdle;  // kIdle, kCharge, kSell or kSwap
  int time = 0;
  int from_level = 0;
  int to_level = 0;
  double weight = 0.0;
  friend bool operator==(const StateArc&, const StateArc&) = default;
};

struct NetworkOptions {
  bool prune_rentals = true;    // rentals only where demand exists
  bool hub_elimination = true;  // drop relocations routable through a hub
};

struct ArcRange {
  int begin = 0;
  int end = 0;
  int size() const { return end - begin; }
};

class StenaNetwork {
 public:
  int num_stations() const { return num_stations_; }
  int num_intervals() const { return num_intervals_; }
  int top_level() const { return top_level_; }
  int num_nodes() const { return 1 + num_stations_ * num_intervals_ * (top_level_ + 1); }

  // Node id 0 is the source; station nodes are dense after it.
  int NodeId(const Node& node) const;
  Node NodeAt(int id) const;
  bool IsValid(const Node& node) const;

  const std::vector<Arc>& arcs() const { return arcs_; }
  const Arc& arc(int id) const { return arcs_[id]; }
  int num_arcs() const { return static_cast<int>(arcs_.size()); }
  ArcRange range(Entity entity, ArcKind kind) const;
  // All arcs of one entity: vehicle arcs precede battery arcs.
  ArcRange range(Entity entity) const;

  std::span<const int> OutArcs(Entity entity, int node_id) const;
  std::span<const int> InArcs(Entity entity, int node_id) const;

  const std::vector<DemandKey>& demand_keys() const { return demand_keys_; }

  // Box state arc template for a charging station, weights included.
  const std::vector<StateArc>& box_template() const { return box_template_; }

  // One arc per line: `kind entity i t e -> j k r weight`.
  void Dump(std::ostream& out) const;

 private:
  friend StenaNetwork BuildNetwork(const Instance&, const NetworkOptions&);

  struct Adjacency {
    std::vector<int> out_start, out_list, in_start, in_list;
  };
  void BuildAdjacency();

  int num_stations_ = 0;
  int num_intervals_ = 0;
  int top_level_ = 0;
  std::vector<Arc> arcs_;
  ArcRange ranges_[2][7];
  ArcRange entity_ranges_[2];
  Adjacency adjacency_[2];
  std::vector<DemandKey> demand_keys_;
  std::vector<StateArc> box_template_;
};

StenaNetwork BuildNetwork(const Instance& instance,
                          const NetworkOptions& options = {});

// Rental arcs for every (i, j, t) pair with t + tau_ij <= T, one per starting
// level with enough charge.
std::vector<Arc> RawRentalArcs(const Instance& instance);
// Relocation arcs between every ordered station pair.
std::vector<Arc> RawRelocationArcs(const Instance& instance);

// Keeps rentals whose (origin, destination, depart) has demand.
std::vector<Arc> PruneRentalArcs(const Instance& instance, std::vector<Arc> raw);

// Drops relocations (i, j) when some hub h outside {i, j} has
// tau_ij == tau_ih + tau_hj. A single pass over the original matrix.
std::vector<Arc> HubEliminateRelocations(const Instance& instance,
                                         std::vector<Arc> raw);

// Idle, charge, sell and swap state arcs of a box at `station`, intervals
// 1..T-1. Throws std::invalid_argument for a station without chargers.
std::vector<StateArc> BoxStateArcs(const Instance& instance, int station);

}  // namespace sevplan

#endif  // SEVPLAN_NETWORK_H_
