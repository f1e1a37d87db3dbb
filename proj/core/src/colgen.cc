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

#include "sevplan/colgen.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <ostream>
#include <thread>
#include <unordered_map>

#include "model_rows.h"

namespace sevplan {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// A master row touched by a chain column.
struct RowRef {
  enum Type { kConservation, kParking, kLocker } type;
  int station = 0;
  int time = 0;
  int level = 0;
};

struct Entry {
  RowRef row;
  double coefficient = 0.0;
};

// Entries of one swap at (i, t): the vehicle leaves (i, t, 0), reappears at
// (i, t + 1, L) and occupies a parking space during t.
int SwapEntries(int i, int t, int horizon, int top, Entry out[3]) {
  int count = 0;
  out[count++] = {{RowRef::kConservation, i, t, 0}, -1.0};
  if (t + 1 <= horizon - 1) out[count++] = {{RowRef::kConservation, i, t + 1, top}, 1.0};
  out[count++] = {{RowRef::kParking, i, t, 0}, 1.0};
  return count;
}

template <typename Visit>
void ForEachEntry(const Chain& chain, const Instance& inst, Visit visit) {
  Entry entries[3];
  for (const StateArc& s : chain.states) {
    if (s.kind != ArcKind::kSwap) continue;
    const int k = SwapEntries(chain.station, s.time, inst.num_intervals(), inst.top_level(),
                              entries);
    for (int j = 0; j < k; ++j) visit(entries[j]);
  }
  visit(Entry{{RowRef::kLocker, chain.station, 0, 0}, 1.0});
}

double DualOf(const RowRef& r, const DualPack& d, const StenaNetwork& net) {
  switch (r.type) {
    case RowRef::kConservation:
      return d.Conservation(net, r.station, r.time, r.level);
    case RowRef::kParking:
      return d.Parking(r.station, r.time);
    case RowRef::kLocker:
      return d.Locker(r.station);
  }
  return 0.0;
}

int RowOf(const RowRef& r, const RestrictedMaster& m, const StenaNetwork& net, int horizon) {
  switch (r.type) {
    case RowRef::kConservation:
      return m.conservation_row[net.NodeId({r.station, r.time, r.level})];
    case RowRef::kParking:
      return m.parking_row[(r.station - 1) * horizon + (r.time - 1)];
    case RowRef::kLocker:
      return m.locker_row[r.station];
  }
  return -1;
}

DualPack ZeroDuals(const StenaNetwork& net, const Instance& inst) {
  DualPack d;
  d.num_intervals = inst.num_intervals();
  d.top_level = inst.top_level();
  d.conservation.assign(net.num_nodes(), 0.0);
  d.parking.assign(inst.num_stations() * inst.num_intervals(), 0.0);
  d.locker.assign(inst.num_stations() + 1, 0.0);
  return d;
}

Chain IdleChain(const Instance& inst, int station) {
  Chain c;
  c.station = station;
  for (int t = 1; t <= inst.num_intervals() - 1; ++t) {
    c.states.push_back({ArcKind::kIdle, t, inst.top_level(), inst.top_level(), 0.0});
  }
  return c;
}

// Battery arc id per (station, t, level, kind).
class BatteryArcIndex {
 public:
  BatteryArcIndex(const StenaNetwork& net, const Instance& inst)
      : horizon_(inst.num_intervals()), levels_(inst.top_level() + 1) {
    ids_.assign(static_cast<size_t>(inst.num_stations() + 1) * horizon_ * levels_ * 7, -1);
    const ArcRange r = net.range(Entity::kBattery);
    for (int b = r.begin; b < r.end; ++b) {
      const Arc& a = net.arc(b);
      if (a.kind == ArcKind::kSource) continue;
      ids_[Slot(a.from.station, a.from.time, a.from.level, a.kind)] = b;
    }
  }
  int Find(int station, const StateArc& s) const {
    return ids_[Slot(station, s.time, s.from_level, s.kind)];
  }

 private:
  size_t Slot(int i, int t, int e, ArcKind kind) const {
    return ((static_cast<size_t>(i) * horizon_ + (t - 1)) * levels_ + e) * 7 +
           static_cast<int>(kind);
  }
  int horizon_;
  int levels_;
  std::vector<int> ids_;
};

}  // namespace

int Chain::swap_count() const {
  return static_cast<int>(std::count_if(states.begin(), states.end(), [](const StateArc& s) {
    return s.kind == ArcKind::kSwap;
  }));
}

std::vector<int> Chain::swap_times() const {
  std::vector<int> times;
  for (const StateArc& s : states) {
    if (s.kind == ArcKind::kSwap) times.push_back(s.time);
  }
  return times;
}

double Chain::profit() const {
  double total = 0.0;
  for (const StateArc& s : states) total += s.weight;
  return total;
}

std::string Chain::Key() const {
  std::string key = std::to_string(station) + ":";
  for (const StateArc& s : states) {
    key += static_cast<char>('a' + static_cast<int>(s.kind));
    key += std::to_string(s.to_level);
    key += ',';
  }
  return key;
}

void ValidateChain(const Chain& chain, const Instance& inst) {
  const auto fail = [&](const std::string& why) {
    throw std::invalid_argument("chain at station " + std::to_string(chain.station) + ": " +
                                why);
  };
  if (chain.station < 1 || chain.station > inst.num_stations() ||
      !inst.station(chain.station).can_charge()) {
    fail("not a charging station");
  }
  if (static_cast<int>(chain.states.size()) != inst.num_intervals() - 1) {
    fail("expected one state per interval");
  }
  int level = inst.top_level();
  for (size_t k = 0; k < chain.states.size(); ++k) {
    const StateArc& s = chain.states[k];
    if (s.time != static_cast<int>(k) + 1) fail("states out of time order");
    if (s.from_level != level) fail("states are not contiguous at t=" + std::to_string(s.time));
    int expected = -1;
    switch (s.kind) {
      case ArcKind::kIdle:
        expected = s.from_level;
        break;
      case ArcKind::kCharge:
        if (s.from_level < inst.top_level()) expected = ChargeStep(s.from_level, inst.energy);
        break;
      case ArcKind::kSell:
        if (s.from_level >= inst.energy.discharge_rate) {
          expected = s.from_level - inst.energy.discharge_rate;
        }
        break;
      case ArcKind::kSwap:
        if (s.from_level == inst.top_level()) expected = 0;
        break;
      default:
        break;
    }
    if (expected < 0 || s.to_level != expected) {
      fail("state at t=" + std::to_string(s.time) + " is not a box state arc");
    }
    const double w = ArcRevenueCost(s.kind, Entity::kBox, s.from_level, s.to_level, s.time, 0,
                                    inst);
    if (std::abs(w - s.weight) > 1e-9) fail("weight mismatch at t=" + std::to_string(s.time));
    level = s.to_level;
  }
}

bool ColumnPool::Add(Chain chain) {
  std::string key = chain.Key();
  if (std::find(keys_.begin(), keys_.end(), key) != keys_.end()) return false;
  keys_.push_back(std::move(key));
  columns_.push_back({std::move(chain), next_id_++, 0});
  return true;
}

bool ColumnPool::Contains(const Chain& chain) const {
  return std::find(keys_.begin(), keys_.end(), chain.Key()) != keys_.end();
}

int ColumnPool::CountAt(int station) const {
  return static_cast<int>(std::count_if(columns_.begin(), columns_.end(), [&](const auto& c) {
    return c.chain.station == station;
  }));
}

void ColumnPool::Erase(const std::vector<bool>& remove) {
  size_t out = 0;
  for (size_t k = 0; k < columns_.size(); ++k) {
    if (k < remove.size() && remove[k]) continue;
    if (out != k) {
      columns_[out] = std::move(columns_[k]);
      keys_[out] = std::move(keys_[k]);
    }
    ++out;
  }
  columns_.resize(out);
  keys_.resize(out);
}

double DualPack::Conservation(const StenaNetwork& net, int i, int t, int e) const {
  if (t < 1 || t > num_intervals - 1 || conservation.empty()) return 0.0;
  return conservation[net.NodeId({i, t, e})];
}

double DualPack::Parking(int i, int t) const {
  if (t < 1 || t > num_intervals - 1 || parking.empty()) return 0.0;
  return parking[(i - 1) * num_intervals + (t - 1)];
}

double DualPack::Locker(int i) const {
  return i < static_cast<int>(locker.size()) ? locker[i] : 0.0;
}

ChainColumn MakeChainColumn(const Chain& chain, const RestrictedMaster& master,
                            const StenaNetwork& net, const Instance& inst) {
  ChainColumn column;
  column.cost = chain.profit() - inst.costs.battery_day;
  ForEachEntry(chain, inst, [&](const Entry& e) {
    const int row = RowOf(e.row, master, net, inst.num_intervals());
    if (row < 0) return;
    column.rows.push_back(row);
    column.values.push_back(e.coefficient);
  });
  return column;
}

double ChainReducedCost(const Chain& chain, const DualPack& duals, const StenaNetwork& net,
                        const Instance& inst) {
  double rc = chain.profit() - inst.costs.battery_day;
  ForEachEntry(chain, inst,
               [&](const Entry& e) { rc -= e.coefficient * DualOf(e.row, duals, net); });
  return rc;
}

RestrictedMaster BuildRmp(const StenaNetwork& net, const Instance& inst, const ColumnPool& pool,
                          const ModelOptions& options) {
  RestrictedMaster m;
  lp::LinearProgram& lp = m.mip.lp;
  const int n = inst.num_stations();
  const double fleet = inst.fleet_size;

  m.arc_column.assign(net.num_arcs(), -1);
  const ArcRange veh = net.range(Entity::kVehicle);
  for (int a = veh.begin; a < veh.end; ++a) {
    const Arc& arc = net.arc(a);
    if (arc.kind == ArcKind::kSwap) continue;
    m.arc_column[a] = lp.AddVariable(arc.weight, 0.0, fleet, "x_" + std::to_string(a));
    if (arc.kind == ArcKind::kRent || arc.kind == ArcKind::kSource) {
      m.mip.integer_variables.push_back(m.arc_column[a]);
    }
  }
  m.upgrade_column.assign(n + 1, -1);
  for (int i : inst.charging_station_ids()) {
    m.upgrade_column[i] =
        lp.AddVariable(-inst.costs.station_upgrade_day, 0.0, 1.0, "s_" + std::to_string(i));
    m.mip.integer_variables.push_back(m.upgrade_column[i]);
  }
  for (const PoolColumn& c : pool.columns()) {
    const int col = lp.AddVariable(
        c.chain.profit() - inst.costs.battery_day, 0.0, lp::kInfinity,
        "g_" + std::to_string(c.chain.station) + "_" + std::to_string(c.id));
    m.chain_column.push_back(col);
    m.mip.integer_variables.push_back(col);
  }
  if (options.objective == ObjectiveVariant::kFleetDepreciation) {
    lp.objective_offset = -inst.costs.vehicle_day.value_or(0.0) * fleet;
  }

  internal::VehicleRows rows =
      internal::AddVehicleRows(net, inst, options.rental_gate, m.arc_column, lp);
  m.conservation_row = std::move(rows.conservation);
  m.parking_row = std::move(rows.parking);
  m.locker_row.assign(n + 1, -1);
  for (int i : inst.charging_station_ids()) {
    m.locker_row[i] = lp.num_rows();
    const int idx[] = {m.upgrade_column[i]};
    const double val[] = {-static_cast<double>(inst.station(i).locker_capacity)};
    lp.AddRow(idx, val, lp::Relation::kLessEqual, 0.0, "locker_" + std::to_string(i));
  }
  for (size_t k = 0; k < pool.columns().size(); ++k) {
    const ChainColumn column = MakeChainColumn(pool.columns()[k].chain, m, net, inst);
    for (size_t j = 0; j < column.rows.size(); ++j) {
      lp::Row& row = lp.rows[column.rows[j]];
      row.indices.push_back(m.chain_column[k]);
      row.values.push_back(column.values[j]);
    }
  }
  return m;
}

DualPack ExtractDuals(const RestrictedMaster& m, const lp::LpSolution& sol,
                      const StenaNetwork& net, const Instance& inst) {
  DualPack d = ZeroDuals(net, inst);
  for (size_t v = 0; v < m.conservation_row.size(); ++v) {
    if (m.conservation_row[v] >= 0) d.conservation[v] = sol.duals[m.conservation_row[v]];
  }
  for (size_t k = 0; k < m.parking_row.size(); ++k) {
    if (m.parking_row[k] >= 0) d.parking[k] = sol.duals[m.parking_row[k]];
  }
  for (size_t i = 0; i < m.locker_row.size(); ++i) {
    if (m.locker_row[i] >= 0) d.locker[i] = sol.duals[m.locker_row[i]];
  }
  return d;
}

std::vector<PricedChain> PriceStation(const StenaNetwork& net, const Instance& inst, int station,
                                      const DualPack& duals, int kappa, int top_k,
                                      double threshold, bool allow_swaps) {
  if (!inst.station(station).can_charge()) {
    throw std::invalid_argument("station " + std::to_string(station) + " has no chargers");
  }
  const int horizon = inst.num_intervals();
  const int top = inst.top_level();
  const int cap = std::max(kappa, 0);
  const int width = cap + 1;
  const int num_states = (top + 1) * width;
  top_k = std::max(top_k, 1);

  struct Label {
    double value;
    int state;  // predecessor state
    int rank;   // predecessor label index
    int arc;    // template arc index
  };
  // layers[t - 1][state] holds up to top_k labels at interval t.
  std::vector<std::vector<std::vector<Label>>> layers(horizon);
  for (auto& layer : layers) layer.resize(num_states);
  layers[0][top * width + 0].push_back({0.0, -1, -1, -1});

  const std::vector<StateArc>& tmpl = net.box_template();
  std::vector<std::vector<int>> by_time(horizon);
  for (size_t h = 0; h < tmpl.size(); ++h) by_time[tmpl[h].time - 1].push_back(h);

  Entry entries[3];
  for (int t = 1; t <= horizon - 1; ++t) {
    auto& cur = layers[t - 1];
    auto& next = layers[t];
    for (int h : by_time[t - 1]) {
      const StateArc& arc = tmpl[h];
      const bool swap = arc.kind == ArcKind::kSwap;
      if (swap && !allow_swaps) continue;
      double gain = arc.weight;
      if (swap) {
        const int k = SwapEntries(station, t, horizon, top, entries);
        for (int j = 0; j < k; ++j) gain -= entries[j].coefficient * DualOf(entries[j].row, duals, net);
      }
      for (int s = 0; s <= cap; ++s) {
        const int from = arc.from_level * width + s;
        const int to = arc.to_level * width + (swap ? std::min(s + 1, cap) : s);
        for (size_t r = 0; r < cur[from].size(); ++r) {
          next[to].push_back({cur[from][r].value + gain, from, static_cast<int>(r), h});
        }
      }
    }
    for (auto& labels : next) {
      if (static_cast<int>(labels.size()) <= top_k) {
        std::stable_sort(labels.begin(), labels.end(),
                         [](const Label& a, const Label& b) { return a.value > b.value; });
        continue;
      }
      std::stable_sort(labels.begin(), labels.end(),
                       [](const Label& a, const Label& b) { return a.value > b.value; });
      labels.resize(top_k);
    }
  }

  struct Final {
    double value;
    int state;
    int rank;
  };
  std::vector<Final> finals;
  const auto& last = layers[horizon - 1];
  for (int e = 0; e <= top; ++e) {
    const int state = e * width + cap;
    for (size_t r = 0; r < last[state].size(); ++r) {
      finals.push_back({last[state][r].value, state, static_cast<int>(r)});
    }
  }
  std::stable_sort(finals.begin(), finals.end(),
                   [](const Final& a, const Final& b) { return a.value > b.value; });

  const double constant = -inst.costs.battery_day - duals.Locker(station);
  std::vector<PricedChain> out;
  for (const Final& f : finals) {
    if (static_cast<int>(out.size()) >= top_k) break;
    const double rc = f.value + constant;
    if (!(rc > threshold)) break;
    PricedChain priced;
    priced.chain.station = station;
    priced.chain.states.resize(horizon - 1);
    int state = f.state;
    int rank = f.rank;
    for (int t = horizon; t >= 2; --t) {
      const Label& label = layers[t - 1][state][rank];
      priced.chain.states[t - 2] = tmpl[label.arc];
      state = label.state;
      rank = label.rank;
    }
    priced.reduced_cost = rc;
    out.push_back(std::move(priced));
  }
  return out;
}

int MaxKappa(const Instance& inst) {
  const EnergyGrid& g = inst.energy;
  const int fast = (g.breakpoint + g.fast_rate - 1) / g.fast_rate;
  const int slow = (g.levels - g.breakpoint + g.slow_rate - 1) / g.slow_rate;
  const int alpha = std::max(1, fast + slow);
  return inst.num_intervals() / alpha + 1;
}

ColumnPool InitialColumns(const StenaNetwork& net, const Instance& inst) {
  ColumnPool pool;
  const DualPack zero = ZeroDuals(net, inst);
  for (int i : inst.charging_station_ids()) {
    pool.Add(IdleChain(inst, i));
    if (inst.num_intervals() < 2) continue;
    std::vector<PricedChain> best =
        PriceStation(net, inst, i, zero, 0, 1, kNegInf, /*allow_swaps=*/false);
    if (!best.empty()) pool.Add(std::move(best.front().chain));
  }
  return pool;
}

void WriteTraceLine(std::ostream& out, const CgIteration& it) {
  out << "cg iter=" << it.iteration << " rmlp=" << it.rmlp_objective
      << " max_rc=" << it.max_reduced_cost << " added=" << it.columns_added
      << " eliminated=" << it.columns_eliminated << " pool=" << it.pool_size << '\n';
}

CgResult RunColumnGeneration(const StenaNetwork& net, const Instance& inst,
                             const CgParams& params) {
  const auto start = std::chrono::steady_clock::now();
  CgResult result;
  ColumnPool& pool = result.pool;
  pool = InitialColumns(net, inst);
  const std::vector<int> stations = inst.charging_station_ids();
  const int kappa_max = params.kappa_max > 0 ? params.kappa_max : MaxKappa(inst);

  struct Task {
    int station;
    int kappa;
  };
  std::vector<Task> tasks;
  for (int i : stations) {
    for (int k = 1; k <= kappa_max; ++k) tasks.push_back({i, k});
  }

  lp::Basis warm;
  std::unordered_map<int, lp::VarStatus> chain_status;  // pool id -> status
  int fixed_columns = -1;

  for (int iter = 1; iter <= params.max_iterations; ++iter) {
    const RestrictedMaster master = BuildRmp(net, inst, pool, params.model);
    if (fixed_columns < 0) {
      fixed_columns = master.mip.lp.num_variables() - static_cast<int>(master.chain_column.size());
    }
    lp::Basis start_basis;
    const lp::Basis* start_ptr = nullptr;
    if (!warm.empty()) {
      start_basis.rows = warm.rows;
      start_basis.columns.assign(warm.columns.begin(), warm.columns.begin() + fixed_columns);
      for (const PoolColumn& c : pool.columns()) {
        auto it = chain_status.find(c.id);
        start_basis.columns.push_back(it == chain_status.end() ? lp::VarStatus::kAtLower
                                                               : it->second);
      }
      start_ptr = &start_basis;
    }
    const lp::LpSolution sol = lp::SolveLp(master.mip.lp, start_ptr);
    if (sol.status == lp::LpStatus::kInfeasible && iter == 1) {
      result.report.infeasible = true;
      break;
    }
    if (sol.status != lp::LpStatus::kOptimal) {
      throw std::runtime_error(std::string("restricted master not solved to optimality: ") +
                               lp::ToString(sol.status));
    }
    warm = sol.basis;
    chain_status.clear();
    for (size_t k = 0; k < pool.columns().size(); ++k) {
      PoolColumn& c = pool.mutable_columns()[k];
      const lp::VarStatus st = sol.basis.columns[master.chain_column[k]];
      chain_status[c.id] = st;
      c.idle_iterations = st == lp::VarStatus::kBasic ? 0 : c.idle_iterations + 1;
    }

    CgIteration it;
    it.iteration = iter;
    it.rmlp_objective = sol.objective;
    it.max_reduced_cost = kNegInf;

    const DualPack duals = ExtractDuals(master, sol, net, inst);
    std::vector<std::vector<PricedChain>> priced(tasks.size());
    const auto run = [&](size_t begin, size_t step) {
      for (size_t k = begin; k < tasks.size(); k += step) {
        priced[k] = PriceStation(net, inst, tasks[k].station, duals, tasks[k].kappa,
                                 params.top_k, kNegInf);
      }
    };
    const int threads = std::max(1, std::min<int>(params.threads, tasks.size()));
    if (threads == 1) {
      run(0, 1);
    } else {
      std::vector<std::thread> workers;
      for (int w = 0; w < threads; ++w) workers.emplace_back(run, w, threads);
      for (std::thread& w : workers) w.join();
    }

    if (iter % params.elimination_period == 0) {
      std::vector<bool> remove(pool.size(), false);
      std::unordered_map<int, int> remaining;
      for (int i : stations) remaining[i] = pool.CountAt(i);
      for (int k = 0; k < pool.size(); ++k) {
        const PoolColumn& c = pool.columns()[k];
        if (c.idle_iterations < params.eta) continue;
        if (remaining[c.chain.station] <= params.min_columns_per_station) continue;
        remove[k] = true;
        --remaining[c.chain.station];
        ++it.columns_eliminated;
      }
      pool.Erase(remove);
    }

    for (auto& list : priced) {
      for (PricedChain& p : list) {
        it.max_reduced_cost = std::max(it.max_reduced_cost, p.reduced_cost);
        if (p.reduced_cost <= params.reduced_cost_tolerance) continue;
        if (pool.Add(std::move(p.chain))) ++it.columns_added;
      }
    }
    it.pool_size = pool.size();
    result.report.iterations.push_back(it);
    result.report.final_rmlp = sol.objective;
    if (params.trace != nullptr) WriteTraceLine(*params.trace, it);
    if (it.columns_added == 0) {
      result.report.converged = true;
      break;
    }
  }
  result.report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

Solution SolveFinalMip(const StenaNetwork& net, const Instance& inst, const ColumnPool& pool,
                       const CgParams& params, double* max_fractionality) {
  const RestrictedMaster master = BuildRmp(net, inst, pool, params.model);
  lp::MipOptions options;
  options.time_limit_seconds = params.final_mip.time_limit_seconds;
  options.relative_gap = params.final_mip.gap_limit;
  options.node_limit = params.final_mip.node_limit;
  const lp::MipResult result = lp::SolveMip(master.mip, options);

  Solution sol;
  sol.status = lp::ToString(result.status);
  sol.bound = result.bound;
  sol.seconds = result.seconds;
  sol.nodes = result.nodes;
  sol.proven_optimal = result.proven_optimal;
  if (!result.has_incumbent) return sol;

  double worst = 0.0;
  int worst_column = -1;
  for (int j = 0; j < master.mip.lp.num_variables(); ++j) {
    const double frac = std::abs(result.primal[j] - std::round(result.primal[j]));
    if (frac > worst) {
      worst = frac;
      worst_column = j;
    }
  }
  if (max_fractionality != nullptr) *max_fractionality = worst;
  if (worst > 1e-6) {
    throw IntegralityViolation("integrality property violated: " +
                               master.mip.lp.variable_names[worst_column] + " = " +
                               std::to_string(result.primal[worst_column]));
  }
  const auto value = [&](int column) { return std::llround(result.primal[column]); };

  const int n = inst.num_stations();
  FlowPlan& plan = sol.plan;
  plan.flows.assign(net.num_arcs(), 0);
  for (int a = 0; a < net.num_arcs(); ++a) {
    if (master.arc_column[a] >= 0) plan.flows[a] = value(master.arc_column[a]);
  }
  std::unordered_map<long long, int> vehicle_swap;
  const ArcRange vswap = net.range(Entity::kVehicle, ArcKind::kSwap);
  for (int a = vswap.begin; a < vswap.end; ++a) {
    vehicle_swap[static_cast<long long>(net.arc(a).from.station) * 100000 +
                 net.arc(a).from.time] = a;
  }
  std::vector<int> battery_source(n + 1, -1);
  const ArcRange bsource = net.range(Entity::kBattery, ArcKind::kSource);
  for (int b = bsource.begin; b < bsource.end; ++b) battery_source[net.arc(b).to.station] = b;
  const BatteryArcIndex index(net, inst);
  for (size_t k = 0; k < pool.columns().size(); ++k) {
    const std::int64_t g = value(master.chain_column[k]);
    if (g == 0) continue;
    const Chain& chain = pool.columns()[k].chain;
    plan.flows[battery_source[chain.station]] += g;
    plan.stocked_batteries += g;
    for (const StateArc& s : chain.states) {
      plan.flows[index.Find(chain.station, s)] += g;
      if (s.kind == ArcKind::kSwap) {
        plan.flows[vehicle_swap.at(static_cast<long long>(chain.station) * 100000 + s.time)] += g;
      }
    }
  }
  plan.upgraded.assign(n + 1, false);
  for (int i = 1; i <= n; ++i) {
    if (master.upgrade_column[i] >= 0) plan.upgraded[i] = value(master.upgrade_column[i]) == 1;
  }

  sol.evaluation = EvaluateSolution(net, inst, plan, params.model);
  sol.objective = sol.evaluation.objective;
  sol.solver_objective = result.objective;
  sol.has_solution = true;
  return sol;
}

Solution SolveCg(const StenaNetwork& net, const Instance& inst, const CgParams& params,
                 CgReport* report) {
  CgResult cg = RunColumnGeneration(net, inst, params);
  if (cg.report.infeasible) {
    Solution sol;
    sol.status = lp::ToString(lp::MipStatus::kInfeasible);
    if (report != nullptr) *report = std::move(cg.report);
    return sol;
  }
  Solution sol = SolveFinalMip(net, inst, cg.pool, params);
  cg.report.final_mip = sol.objective;
  cg.report.mip_seconds = sol.seconds;
  if (report != nullptr) *report = std::move(cg.report);
  return sol;
}

std::vector<Chain> DecomposeBatteryFlows(const StenaNetwork& net, const Instance& inst,
                                         const FlowPlan& plan) {
  std::vector<std::int64_t> left = plan.flows;
  std::vector<Chain> chains;
  const ArcRange bsource = net.range(Entity::kBattery, ArcKind::kSource);
  for (int b = bsource.begin; b < bsource.end; ++b) {
    const int i = net.arc(b).to.station;
    for (; left[b] > 0; --left[b]) {
      Chain chain;
      chain.station = i;
      int level = inst.top_level();
      for (int t = 1; t <= inst.num_intervals() - 1; ++t) {
        int chosen = -1;
        for (int a : net.OutArcs(Entity::kBattery, net.NodeId({i, t, level}))) {
          if (left[a] > 0) {
            chosen = a;
            break;
          }
        }
        if (chosen < 0) {
          throw InfeasiblePlan("battery flow at station " + std::to_string(i) +
                               " breaks at t=" + std::to_string(t));
        }
        --left[chosen];
        const Arc& arc = net.arc(chosen);
        chain.states.push_back({arc.kind, t, arc.from.level, arc.to.level,
                                ArcRevenueCost(arc.kind, Entity::kBox, arc.from.level,
                                               arc.to.level, t, 0, inst)});
        level = arc.to.level;
      }
      chains.push_back(std::move(chain));
    }
  }
  return chains;
}

}  // namespace sevplan
