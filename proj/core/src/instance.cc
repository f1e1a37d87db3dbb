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

#include "sevplan/instance.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <tuple>

#include "json.hpp"

namespace sevplan {
namespace {

using Json = nlohmann::ordered_json;

std::string Where(const DemandRecord& d) {
  std::ostringstream s;
  s << "(" << d.origin << "," << d.destination << "," << d.depart << ")";
  return s.str();
}

int LineOf(const std::string& text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + byte, '\n'));
}

// Best-effort line of the first occurrence of "key" in the text.
int LineOfKey(const std::string& text, const std::string& key) {
  const std::size_t at = text.find("\"" + key + "\"");
  return at == std::string::npos ? 0 : LineOf(text, at);
}

class Reader {
 public:
  explicit Reader(const std::string& text) : text_(text) {}

  [[noreturn]] void Fail(const std::string& field, const std::string& what) const {
    const std::string leaf = field.substr(field.find_last_of('.') + 1);
    const int line = LineOfKey(text_, leaf);
    throw ParseError("field '" + field + "': " + what +
                         (line > 0 ? " (line " + std::to_string(line) + ")" : ""),
                     line, field);
  }

  const Json& Get(const Json& obj, const std::string& key,
                  const std::string& path) const {
    if (!obj.is_object()) Fail(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) Fail(path + "." + key, "missing");
    return *it;
  }

  int Int(const Json& v, const std::string& path) const {
    if (!v.is_number_integer()) Fail(path, "expected an integer");
    return v.get<int>();
  }

  double Number(const Json& v, const std::string& path) const {
    if (!v.is_number()) Fail(path, "expected a number");
    return v.get<double>();
  }

  const Json& Array(const Json& v, const std::string& path) const {
    if (!v.is_array()) Fail(path, "expected a list");
    return v;
  }

 private:
  const std::string& text_;
};

const std::set<std::string>& TopLevelKeys() {
  static const std::set<std::string> keys = {
      "stations", "travel_time", "horizon", "energy",
      "tariff",   "demand",      "fleet_size", "costs"};
  return keys;
}

}  // namespace

int EnergyGrid::FullChargeIntervals() const {
  const int below = (breakpoint + fast_rate - 1) / fast_rate;
  const int above = (levels - breakpoint + slow_rate - 1) / slow_rate;
  return below + above;
}

int ChargeStep(int level, const EnergyGrid& grid) {
  if (level >= grid.levels) return grid.levels;
  const bool fast = level < grid.breakpoint;
  int next = level + (fast ? grid.fast_rate : grid.slow_rate);
  if (fast && grid.clamp_at_breakpoint && next > grid.breakpoint) {
    next = grid.breakpoint;
  }
  return std::min(next, grid.levels);
}

std::vector<int> Instance::charging_station_ids() const {
  std::vector<int> ids;
  for (const Station& s : stations) {
    if (s.can_charge()) ids.push_back(s.id);
  }
  return ids;
}

int Instance::total_demand() const {
  int total = 0;
  for (const DemandRecord& d : demand) total += d.quantity;
  return total;
}

void Instance::Validate() const {
  const int n = num_stations();
  if (n < 1) throw ValidationError("instance has no stations");
  for (int k = 0; k < n; ++k) {
    const Station& s = stations[k];
    if (s.id != k + 1) {
      throw ValidationError("station ids must be 1..n in order (got " +
                            std::to_string(s.id) + " at position " +
                            std::to_string(k + 1) + ")");
    }
    if (s.parking_spaces < 1) {
      throw ValidationError("station " + std::to_string(s.id) +
                            ": parking_spaces must be >= 1");
    }
    if (s.locker_capacity < 0) {
      throw ValidationError("station " + std::to_string(s.id) +
                            ": locker_capacity must be >= 0");
    }
  }
  if (static_cast<int>(travel_time.size()) != n) {
    throw ValidationError("travel_time must be a square matrix over stations");
  }
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(travel_time[i].size()) != n) {
      throw ValidationError("travel_time must be a square matrix over stations");
    }
    if (travel_time[i][i] != 0) {
      throw ValidationError("travel_time diagonal must be zero");
    }
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (travel_time[i][j] < 1) {
        throw ValidationError("travel_time off-diagonal entries must be >= 1");
      }
      if (travel_time[i][j] != travel_time[j][i]) {
        throw ValidationError("travel_time must be symmetric");
      }
    }
  }
  if (horizon.intervals < 1) throw ValidationError("horizon must have >= 1 interval");
  if (!(horizon.minutes_per_interval > 0)) {
    throw ValidationError("minutes per interval must be positive");
  }
  const EnergyGrid& g = energy;
  if (g.levels < 1) throw ValidationError("energy levels must be >= 1");
  if (!(0 < g.slow_rate && g.slow_rate <= g.fast_rate && g.fast_rate <= g.levels)) {
    throw ValidationError("charging rates must satisfy 0 < slow <= fast <= levels");
  }
  if (!(0 < g.discharge_rate && g.discharge_rate <= g.levels)) {
    throw ValidationError("discharge rate must satisfy 0 < rate <= levels");
  }
  if (!(0 < g.breakpoint && g.breakpoint <= g.levels)) {
    throw ValidationError("breakpoint must lie in (0, levels]");
  }
  if (!(g.battery_kwh > 0)) throw ValidationError("battery capacity must be positive");
  if (static_cast<int>(tariff.size()) != horizon.intervals) {
    throw ValidationError("tariff length must equal the number of intervals");
  }
  for (double p : tariff) {
    if (!(p >= 0) || !std::isfinite(p)) {
      throw ValidationError("tariff prices must be finite and >= 0");
    }
  }
  for (const DemandRecord& d : demand) {
    if (d.origin < 1 || d.origin > n || d.destination < 1 || d.destination > n) {
      throw ValidationError("demand " + Where(d) + " references an unknown station");
    }
    if (d.origin == d.destination) {
      throw ValidationError("demand " + Where(d) + " has origin == destination");
    }
    if (d.quantity < 1) {
      throw ValidationError("demand " + Where(d) + " must have quantity >= 1");
    }
    if (d.depart < 1) throw ValidationError("demand " + Where(d) + " departs before 1");
    const int travel = tau(d.origin, d.destination);
    if (d.depart + travel > horizon.intervals) {
      throw ValidationError("unreachable demand " + Where(d) +
                            ": arrival after the horizon");
    }
    if (g.discharge_rate * travel > g.levels) {
      throw ValidationError("demand " + Where(d) +
                            " cannot be served by a full battery");
    }
  }
  if (fleet_size < 1) throw ValidationError("fleet_size must be >= 1");
  const double cost_values[] = {costs.rental_price, costs.relocation_rate,
                                costs.swap_cost, costs.battery_day,
                                costs.station_upgrade_day};
  for (double c : cost_values) {
    if (!std::isfinite(c)) throw ValidationError("costs must be finite");
  }
}

Instance ParseInstance(const std::string& text) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const int line = LineOf(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ParseError("syntax error at line " + std::to_string(line) + ": " + e.what(),
                     line, "");
  }
  Reader r(text);
  if (!root.is_object()) r.Fail("<root>", "expected an object");
  for (const auto& [key, value] : root.items()) {
    if (!TopLevelKeys().contains(key)) r.Fail(key, "unknown top-level key");
  }

  Instance inst;
  const Json& stations = r.Array(r.Get(root, "stations", ""), "stations");
  for (std::size_t k = 0; k < stations.size(); ++k) {
    const std::string path = "stations[" + std::to_string(k) + "]";
    const Json& s = stations[k];
    Station st;
    st.id = r.Int(r.Get(s, "id", path), path + ".id");
    const Json& kind = r.Get(s, "kind", path);
    if (kind == "park") {
      st.kind = StationKind::kParking;
    } else if (kind == "charge") {
      st.kind = StationKind::kCharging;
    } else {
      r.Fail(path + ".kind", "expected \"park\" or \"charge\"");
    }
    st.parking_spaces = r.Int(r.Get(s, "parking", path), path + ".parking");
    st.locker_capacity = r.Int(r.Get(s, "locker", path), path + ".locker");
    inst.stations.push_back(st);
  }

  const Json& tt = r.Array(r.Get(root, "travel_time", ""), "travel_time");
  for (std::size_t i = 0; i < tt.size(); ++i) {
    const std::string path = "travel_time[" + std::to_string(i) + "]";
    const Json& row = r.Array(tt[i], path);
    std::vector<int> values;
    for (std::size_t j = 0; j < row.size(); ++j) {
      values.push_back(r.Int(row[j], path + "[" + std::to_string(j) + "]"));
    }
    inst.travel_time.push_back(std::move(values));
  }

  const Json& horizon = r.Get(root, "horizon", "");
  inst.horizon.intervals = r.Int(r.Get(horizon, "intervals", "horizon"), "horizon.intervals");
  inst.horizon.minutes_per_interval =
      r.Number(r.Get(horizon, "minutes", "horizon"), "horizon.minutes");

  const Json& energy = r.Get(root, "energy", "");
  EnergyGrid& g = inst.energy;
  g.levels = r.Int(r.Get(energy, "levels", "energy"), "energy.levels");
  g.fast_rate = r.Int(r.Get(energy, "fast_rate", "energy"), "energy.fast_rate");
  g.slow_rate = r.Int(r.Get(energy, "slow_rate", "energy"), "energy.slow_rate");
  g.breakpoint = r.Int(r.Get(energy, "breakpoint", "energy"), "energy.breakpoint");
  g.discharge_rate =
      r.Int(r.Get(energy, "discharge_rate", "energy"), "energy.discharge_rate");
  if (energy.contains("battery_kwh")) {
    g.battery_kwh = r.Number(energy["battery_kwh"], "energy.battery_kwh");
  }
  if (energy.contains("clamp_at_breakpoint")) {
    if (!energy["clamp_at_breakpoint"].is_boolean()) {
      r.Fail("energy.clamp_at_breakpoint", "expected a boolean");
    }
    g.clamp_at_breakpoint = energy["clamp_at_breakpoint"].get<bool>();
  }

  const Json& tariff = r.Array(r.Get(root, "tariff", ""), "tariff");
  for (std::size_t t = 0; t < tariff.size(); ++t) {
    inst.tariff.push_back(r.Number(tariff[t], "tariff[" + std::to_string(t) + "]"));
  }

  const Json& demand = r.Array(r.Get(root, "demand", ""), "demand");
  for (std::size_t k = 0; k < demand.size(); ++k) {
    const std::string path = "demand[" + std::to_string(k) + "]";
    const Json& d = r.Array(demand[k], path);
    if (d.size() != 4) r.Fail(path, "expected [origin, destination, depart, quantity]");
    inst.demand.push_back({r.Int(d[0], path + "[0]"), r.Int(d[1], path + "[1]"),
                           r.Int(d[2], path + "[2]"), r.Int(d[3], path + "[3]")});
  }

  inst.fleet_size = r.Int(r.Get(root, "fleet_size", ""), "fleet_size");

  const Json& costs = r.Get(root, "costs", "");
  Costs& c = inst.costs;
  c.rental_price = r.Number(r.Get(costs, "rental_price", "costs"), "costs.rental_price");
  c.relocation_rate =
      r.Number(r.Get(costs, "relocation_rate", "costs"), "costs.relocation_rate");
  c.swap_cost = r.Number(r.Get(costs, "swap_cost", "costs"), "costs.swap_cost");
  c.battery_day = r.Number(r.Get(costs, "battery_day", "costs"), "costs.battery_day");
  c.station_upgrade_day = r.Number(r.Get(costs, "station_upgrade_day", "costs"),
                                   "costs.station_upgrade_day");
  if (costs.contains("vehicle_day") && !costs["vehicle_day"].is_null()) {
    c.vehicle_day = r.Number(costs["vehicle_day"], "costs.vehicle_day");
  }

  inst.Validate();
  return inst;
}

Instance LoadInstance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string(), 0, "");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseInstance(buffer.str());
}

std::string SerializeInstance(const Instance& inst) {
  Json root;
  Json stations = Json::array();
  for (const Station& s : inst.stations) {
    Json js;
    js["id"] = s.id;
    js["kind"] = s.can_charge() ? "charge" : "park";
    js["parking"] = s.parking_spaces;
    js["locker"] = s.locker_capacity;
    stations.push_back(js);
  }
  root["stations"] = stations;
  root["travel_time"] = inst.travel_time;
  root["horizon"] = {{"intervals", inst.horizon.intervals},
                     {"minutes", inst.horizon.minutes_per_interval}};
  Json energy;
  energy["levels"] = inst.energy.levels;
  energy["fast_rate"] = inst.energy.fast_rate;
  energy["slow_rate"] = inst.energy.slow_rate;
  energy["breakpoint"] = inst.energy.breakpoint;
  energy["discharge_rate"] = inst.energy.discharge_rate;
  energy["battery_kwh"] = inst.energy.battery_kwh;
  if (inst.energy.clamp_at_breakpoint) energy["clamp_at_breakpoint"] = true;
  root["energy"] = energy;
  root["tariff"] = inst.tariff;
  Json demand = Json::array();
  for (const DemandRecord& d : inst.demand) {
    demand.push_back({d.origin, d.destination, d.depart, d.quantity});
  }
  root["demand"] = demand;
  root["fleet_size"] = inst.fleet_size;
  Json costs;
  costs["rental_price"] = inst.costs.rental_price;
  costs["relocation_rate"] = inst.costs.relocation_rate;
  costs["swap_cost"] = inst.costs.swap_cost;
  costs["battery_day"] = inst.costs.battery_day;
  costs["station_upgrade_day"] = inst.costs.station_upgrade_day;
  if (inst.costs.vehicle_day) costs["vehicle_day"] = *inst.costs.vehicle_day;
  root["costs"] = costs;

  // One demand record / matrix row per line keeps files diffable.
  std::ostringstream out;
  out << "{\n";
  bool first = true;
  for (const auto& [key, value] : root.items()) {
    if (!first) out << ",\n";
    first = false;
    out << "  \"" << key << "\": ";
    if (value.is_array() && !value.empty() && (value[0].is_array() || value[0].is_object())) {
      out << "[\n";
      for (std::size_t k = 0; k < value.size(); ++k) {
        out << "    " << value[k].dump() << (k + 1 < value.size() ? ",\n" : "\n");
      }
      out << "  ]";
    } else {
      out << value.dump();
    }
  }
  out << "\n}\n";
  return out.str();
}

void SaveInstance(const Instance& instance, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << SerializeInstance(instance);
}

const char* ToString(ArcKind kind) {
  switch (kind) {
    case ArcKind::kRent:
      return "rent";
    case ArcKind::kRelo:
      return "relo";
    case ArcKind::kIdle:
      return "idle";
    case ArcKind::kCharge:
      return "charge";
    case ArcKind::kSell:
      return "sell";
    case ArcKind::kSwap:
      return "swap";
    case ArcKind::kSource:
      return "source";
  }
  return "?";
}

const char* ToString(Entity entity) {
  switch (entity) {
    case Entity::kVehicle:
      return "vehicle";
    case Entity::kBattery:
      return "battery";
    case Entity::kBox:
      return "box";
  }
  return "?";
}

double ArcRevenueCost(ArcKind kind, Entity entity, int from_level, int to_level,
                      int interval, int travel, const Instance& inst) {
  const int top = inst.top_level();
  const auto bad = [&](const std::string& why) {
    throw std::invalid_argument(std::string(ToString(kind)) + " arc: " + why);
  };
  if (from_level < 0 || from_level > top || to_level < 0 || to_level > top) {
    bad("level out of range");
  }
  const double kwh_per_level = inst.energy.level_kwh();
  switch (kind) {
    case ArcKind::kRent:
    case ArcKind::kRelo:
      if (entity != Entity::kVehicle) bad("only vehicles travel");
      if (travel < 1) bad("travel time must be >= 1");
      if (to_level != from_level - inst.energy.discharge_rate * travel) {
        bad("energy drop does not match travel time");
      }
      return kind == ArcKind::kRent ? inst.costs.rental_price * travel
                                    : -inst.costs.relocation_rate * travel;
    case ArcKind::kIdle:
      if (to_level != from_level) bad("idle arcs keep their level");
      return 0.0;
    case ArcKind::kSource:
      return 0.0;
    case ArcKind::kCharge:
      if (to_level <= from_level) bad("charging must raise the level");
      return -kwh_per_level * (to_level - from_level) * inst.price(interval);
    case ArcKind::kSell:
      if (to_level >= from_level) bad("selling must lower the level");
      return kwh_per_level * (from_level - to_level) * inst.price(interval);
    case ArcKind::kSwap:
      if (entity == Entity::kVehicle) {
        if (from_level != 0 || to_level != top) bad("vehicle swaps go from empty to full");
        return -inst.costs.swap_cost;
      }
      if (from_level != top || to_level != 0) bad("stocked swaps go from full to empty");
      return entity == Entity::kBox ? -inst.costs.swap_cost : 0.0;
  }
  return 0.0;
}

Instance GenerateRandom(int num_stations, int num_intervals, int num_demand,
                        std::uint64_t seed, const GeneratorOptions& options) {
  if (num_stations < 2) throw std::invalid_argument("scale needs >= 2 stations");
  if (num_intervals < 2) throw std::invalid_argument("scale needs >= 2 intervals");
  if (num_demand < 1) throw std::invalid_argument("scale needs >= 1 trip");
  std::mt19937_64 rng(seed);
  const auto uniform_int = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  const auto uniform = [&] { return std::uniform_real_distribution<double>(0, 1)(rng); };

  Instance inst;
  inst.energy = options.energy;
  inst.horizon.intervals = num_intervals;
  inst.horizon.minutes_per_interval = options.minutes_per_interval;

  const int chargers = std::clamp(
      static_cast<int>(std::lround(options.charging_share * num_stations)), 1,
      num_stations);
  std::vector<int> order(num_stations);
  for (int k = 0; k < num_stations; ++k) order[k] = k;
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<bool> charging(num_stations, false);
  for (int k = 0; k < chargers; ++k) charging[order[k]] = true;
  for (int k = 0; k < num_stations; ++k) {
    Station s;
    s.id = k + 1;
    s.kind = charging[k] ? StationKind::kCharging : StationKind::kParking;
    s.parking_spaces = options.parking_spaces;
    s.locker_capacity = charging[k] ? options.locker_capacity : 0;
    inst.stations.push_back(s);
  }

  // Manhattan distances on a small grid: symmetric, and collinear triples
  // give exact hub stations.
  const int max_tt = std::max(
      1, std::min({options.max_travel_time, num_intervals - 1,
                   inst.energy.levels / inst.energy.discharge_rate}));
  std::vector<std::pair<int, int>> coords(num_stations);
  for (auto& c : coords) c = {uniform_int(0, max_tt), uniform_int(0, max_tt)};
  inst.travel_time.assign(num_stations, std::vector<int>(num_stations, 0));
  for (int i = 0; i < num_stations; ++i) {
    for (int j = i + 1; j < num_stations; ++j) {
      const int d = std::abs(coords[i].first - coords[j].first) +
                    std::abs(coords[i].second - coords[j].second);
      const int t = std::clamp(d, 1, max_tt);
      inst.travel_time[i][j] = inst.travel_time[j][i] = t;
    }
  }

  // Peak / flat / off-peak tariff over the horizon.
  for (int t = 1; t <= num_intervals; ++t) {
    const double p = (t - 0.5) / num_intervals;
    double price = 0.51;
    if ((p >= 0.15 && p < 0.35) || (p >= 0.7 && p < 0.9)) price = 0.759;
    if (p >= 0.4 && p < 0.6) price = 0.261;
    inst.tariff.push_back(price);
  }

  std::map<std::tuple<int, int, int>, int> trips;
  for (int k = 0; k < num_demand; ++k) {
    const int o = uniform_int(1, num_stations);
    int d = uniform_int(1, num_stations - 1);
    if (d >= o) ++d;
    const int travel = inst.travel_time[o - 1][d - 1];
    const int latest = num_intervals - travel;
    double p = uniform();
    if (options.two_peak_demand) {
      const double mode = uniform();
      if (mode < 0.4) {
        p = std::normal_distribution<double>(0.25, 0.08)(rng);
      } else if (mode < 0.8) {
        p = std::normal_distribution<double>(0.7, 0.08)(rng);
      }
    }
    p = std::clamp(p, 0.0, 0.999999);
    const int depart = std::clamp(1 + static_cast<int>(p * latest), 1, latest);
    ++trips[{o, d, depart}];
  }
  for (const auto& [key, q] : trips) {
    inst.demand.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), q});
  }

  const int parking = options.parking_spaces * num_stations;
  inst.fleet_size = options.fleet_size.value_or(
      std::clamp((num_demand + 3) / 4, 1, parking));

  const double minutes = options.minutes_per_interval;
  inst.costs.rental_price = 0.8 * minutes;
  inst.costs.relocation_rate = 0.3 * minutes;
  inst.costs.swap_cost = 5.0;
  inst.costs.battery_day = 15.0;
  inst.costs.station_upgrade_day = 25.0;
  inst.Validate();
  return inst;
}

}  // namespace sevplan
