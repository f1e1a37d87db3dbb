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

// Column generation over battery-box chains.
//
// A chain is the day of one locker box at an upgraded station: one state arc
// per interval, starting full at t = 1. The master problem keeps the vehicle
// flows of the compact model, replaces stocked-battery flows with chain
// columns g, and links chain swaps to vehicle conservation and parking rows.
// New chains are priced per (station, kappa) by a k-best longest path over
// (t, level, min(swaps, kappa)).

#ifndef SEVPLAN_COLGEN_H_
#define SEVPLAN_COLGEN_H_

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "sevplan/compact.h"
#include "sevplan/instance.h"
#include "sevplan/lp.h"
#include "sevplan/network.h"

namespace sevplan {

struct Chain {
  int station = 0;
  std::vector<StateArc> states;  // states[k] covers interval k + 1 -> k + 2

  int swap_count() const;
  std::vector<int> swap_times() const;
  double profit() const;  // sum of state arc weights
  // Station plus the level sequence; two chains are the same column iff equal.
  std::string Key() const;
};

// Throws std::invalid_argument unless the chain starts full at t = 1, covers
// every interval once, is node-contiguous and uses only template arcs.
void ValidateChain(const Chain& chain, const Instance& instance);

struct PoolColumn {
  Chain chain;
  int id = 0;               // stable for the lifetime of the pool
  int idle_iterations = 0;  // consecutive RMLP solves spent nonbasic
};

class ColumnPool {
 public:
  // Returns false when an identical chain is already pooled.
  bool Add(Chain chain);
  bool Contains(const Chain& chain) const;
  const std::vector<PoolColumn>& columns() const { return columns_; }
  std::vector<PoolColumn>& mutable_columns() { return columns_; }
  int size() const { return static_cast<int>(columns_.size()); }
  int CountAt(int station) const;
  // Removes columns for which `remove[k]` is true; keeps ids of the rest.
  void Erase(const std::vector<bool>& remove);

 private:
  std::vector<PoolColumn> columns_;
  std::vector<std::string> keys_;
  int next_id_ = 0;
};

// Duals of the master rows that a chain column touches, maximization
// convention. Absent rows read as zero.
struct DualPack {
  int num_intervals = 0;
  int top_level = 0;
  std::vector<double> conservation;  // by StenaNetwork node id
  std::vector<double> parking;       // by (station - 1) * T + (t - 1)
  std::vector<double> locker;        // by station id

  double Conservation(const StenaNetwork& network, int i, int t, int e) const;
  double Parking(int i, int t) const;
  double Locker(int i) const;
};

struct RestrictedMaster {
  lp::MixedIntegerProgram mip;  // integer_variables: rent, source, g, s
  std::vector<int> arc_column;   // vehicle arc id -> column, -1 for swaps
  std::vector<int> upgrade_column;
  std::vector<int> chain_column;  // pool position -> column
  std::vector<int> conservation_row;  // node id -> row, -1 if none
  std::vector<int> parking_row;       // (station - 1) * T + (t - 1) -> row
  std::vector<int> locker_row;        // station id -> row, -1 if none
};

RestrictedMaster BuildRmp(const StenaNetwork& network, const Instance& instance,
                          const ColumnPool& pool, const ModelOptions& options = {});

// Sparse master column of a chain, plus its objective coefficient.
struct ChainColumn {
  double cost = 0.0;
  std::vector<int> rows;
  std::vector<double> values;
};
ChainColumn MakeChainColumn(const Chain& chain, const RestrictedMaster& master,
                            const StenaNetwork& network, const Instance& instance);

// c_j - y^T A_j over the master rows.
double ChainReducedCost(const Chain& chain, const DualPack& duals,
                        const StenaNetwork& network, const Instance& instance);

DualPack ExtractDuals(const RestrictedMaster& master, const lp::LpSolution& solution,
                      const StenaNetwork& network, const Instance& instance);

// Per charging station: the all-idle chain and the best chain without swaps
// under zero duals, if it differs.
ColumnPool InitialColumns(const StenaNetwork& network, const Instance& instance);

struct PricedChain {
  Chain chain;
  double reduced_cost = 0.0;
};

// Up to `top_k` distinct chains with at least `kappa` swaps, best reduced
// cost first, keeping only reduced costs above `threshold`. kappa = 0 with
// `allow_swaps` false prices plain chains.
std::vector<PricedChain> PriceStation(const StenaNetwork& network, const Instance& instance,
                                      int station, const DualPack& duals, int kappa,
                                      int top_k, double threshold = 1e-6,
                                      bool allow_swaps = true);

// floor(T / alpha) + 1 with alpha the empty-to-full charging time.
int MaxKappa(const Instance& instance);

struct CgParams {
  int kappa_max = 0;  // 0 selects MaxKappa
  int top_k = 5;
  int eta = 20;
  int elimination_period = 10;
  int min_columns_per_station = 2;
  double reduced_cost_tolerance = 1e-6;
  int max_iterations = 500;
  int threads = 1;
  ModelOptions model;
  SolveLimits final_mip;
  std::ostream* trace = nullptr;
};

struct CgIteration {
  int iteration = 0;
  double rmlp_objective = 0.0;
  double max_reduced_cost = 0.0;
  int columns_added = 0;
  int columns_eliminated = 0;  // removed after this iteration's solve
  int pool_size = 0;           // after additions and removals
};

struct CgReport {
  std::vector<CgIteration> iterations;
  double final_rmlp = 0.0;
  double final_mip = 0.0;
  bool converged = false;
  bool infeasible = false;  // the first master relaxation had no solution
  double seconds = 0.0;
  double mip_seconds = 0.0;
};

// Writes one trace line: `cg iter=.. rmlp=.. max_rc=.. added=.. eliminated=..
// pool=..`.
void WriteTraceLine(std::ostream& out, const CgIteration& it);

struct CgResult {
  ColumnPool pool;
  CgReport report;
};

CgResult RunColumnGeneration(const StenaNetwork& network, const Instance& instance,
                             const CgParams& params = {});

// Raised when the partially relaxed final program returns a fractional value.
class IntegralityViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Solves the master over `pool` with rentals, sources, chains and upgrades
// integral. Throws IntegralityViolation if any relaxed variable comes out
// fractional; otherwise decodes flows and evaluates them.
Solution SolveFinalMip(const StenaNetwork& network, const Instance& instance,
                       const ColumnPool& pool, const CgParams& params = {},
                       double* max_fractionality = nullptr);

// Full heuristic: column generation then the final program.
Solution SolveCg(const StenaNetwork& network, const Instance& instance,
                 const CgParams& params = {}, CgReport* report = nullptr);

// Splits the stocked-battery flows of a plan into one chain per battery.
std::vector<Chain> DecomposeBatteryFlows(const StenaNetwork& network, const Instance& instance,
                                         const FlowPlan& plan);

}  // namespace sevplan

#endif  // SEVPLAN_COLGEN_H_
