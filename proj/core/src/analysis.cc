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

#include "sevplan/analysis.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include "sevplan/network.h"

namespace sevplan {
namespace {

int PercentToLevels(double percent, const EnergyGrid& grid) {
  const double levels = percent / grid.level_percent();
  const long rounded = std::lround(levels);
  if (rounded < 1 || std::abs(levels - rounded) > 1e-9) {
    throw std::invalid_argument("charging rate " + std::to_string(percent) +
                                "% is not a whole number of levels");
  }
  return static_cast<int>(rounded);
}

Solution RunCg(const Instance& inst, const CgParams& params) {
  const StenaNetwork net = BuildNetwork(inst);
  return SolveCg(net, inst, params);
}

// Runs `work(k)` for k in [0, count) on up to `threads` workers.
template <typename Work>
void ForEachScenario(int count, int threads, Work work) {
  threads = std::max(1, std::min(threads, count));
  if (threads == 1) {
    for (int k = 0; k < count; ++k) work(k);
    return;
  }
  std::vector<std::thread> workers;
  for (int w = 0; w < threads; ++w) {
    workers.emplace_back([&, w] {
      for (int k = w; k < count; k += threads) work(k);
    });
  }
  for (std::thread& t : workers) t.join();
}

std::string Fixed(double v, int digits = 2) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

// Truncated, not rounded, to two decimals.
std::string GapText(double percent) {
  const double sign = percent < 0 ? -1.0 : 1.0;
  const double cut = sign * std::trunc(std::abs(percent) * 100.0 + 1e-9) / 100.0;
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.2f%%", cut);
  return buffer;
}

}  // namespace

std::string FormatGap(double exact, double heuristic) {
  return GapText(ObjectiveGapPercent(exact, heuristic));
}

CompareReport Compare(const Instance& inst, const SolveLimits& limits, const CgParams& params) {
  CompareReport report;
  const StenaNetwork net = BuildNetwork(inst);
  const CompactModel model = BuildCompact(net, inst, params.model);
  const Solution exact = SolveExact(model, net, inst, limits);
  report.exact_has_solution = exact.has_solution;
  report.exact_optimal = exact.has_solution && exact.proven_optimal;
  report.exact_objective = exact.objective;
  report.exact_bound = exact.bound;
  report.exact_seconds = exact.seconds;

  const auto start = std::chrono::steady_clock::now();
  const Solution cg = SolveCg(net, inst, params);
  report.cg_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report.cg_objective = cg.objective;
  if (report.exact_optimal) {
    report.gap_percent = ObjectiveGapPercent(exact.objective, cg.objective);
  } else {
    report.gap_from_bound = true;
    report.gap_percent = ObjectiveGapPercent(exact.bound, cg.objective);
  }
  return report;
}

void PrintCompare(const CompareReport& r, std::ostream& out) {
  if (r.exact_optimal) {
    out << "exact objective   " << Fixed(r.exact_objective) << "\n";
  } else if (r.exact_has_solution) {
    out << "exact incumbent   " << Fixed(r.exact_objective) << " (not proven optimal)\n";
  } else {
    out << "exact incumbent   none\n";
  }
  out << "exact bound       " << Fixed(r.exact_bound) << "\n";
  out << "cg objective      " << Fixed(r.cg_objective) << "\n";
  out << (r.gap_from_bound ? "gap vs bound      " : "gap               ");
  out << GapText(r.gap_percent) << "\n";
  out << "exact seconds     " << Fixed(r.exact_seconds, 3) << "\n";
  out << "cg seconds        " << Fixed(r.cg_seconds, 3) << "\n";
}

ChargeProfile ParseChargeProfile(const std::string& spec, const EnergyGrid& grid) {
  ChargeProfile p;
  p.label = spec;
  double fast = 0.0;
  double slow = 0.0;
  if (spec == "fast") {
    fast = 40.0;
    slow = 10.0;
  } else if (spec == "normal") {
    fast = 20.0;
    slow = 10.0;
  } else if (spec == "slow") {
    fast = 10.0;
    slow = 10.0;
  } else if (spec.rfind("custom:", 0) == 0) {
    const std::string rates = spec.substr(7);
    const size_t comma = rates.find(',');
    if (comma == std::string::npos) {
      throw std::invalid_argument("custom profile needs two rates: custom:B1,B2");
    }
    try {
      fast = std::stod(rates.substr(0, comma));
      slow = std::stod(rates.substr(comma + 1));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad custom charging profile '" + spec + "'");
    }
  } else {
    throw std::invalid_argument("unknown charging profile '" + spec + "'");
  }
  p.fast_rate = PercentToLevels(fast, grid);
  p.slow_rate = PercentToLevels(slow, grid);
  if (p.slow_rate > p.fast_rate) {
    throw std::invalid_argument("slow rate exceeds fast rate in '" + spec + "'");
  }
  return p;
}

SweepReport SweepCharging(const Instance& base, const std::vector<ChargeProfile>& profiles,
                          const CgParams& params, int threads) {
  SweepReport report;
  report.kind = "charging";
  std::string tag;
  for (const ChargeProfile& p : profiles) {
    tag += p.label + ":" + std::to_string(p.fast_rate) + "/" + std::to_string(p.slow_rate) + ";";
  }
  report.fingerprint = ConfigFingerprint(base, "charging;" + tag);
  report.rows.resize(profiles.size());
  ForEachScenario(static_cast<int>(profiles.size()), threads, [&](int k) {
    Instance inst = base;
    inst.energy.fast_rate = profiles[k].fast_rate;
    inst.energy.slow_rate = profiles[k].slow_rate;
    SweepRow& row = report.rows[k];
    row.label = profiles[k].label;
    try {
      inst.Validate();
      row.solution = RunCg(inst, params);
      row.feasible = row.solution.has_solution;
      if (!row.feasible) row.note = row.solution.status;
    } catch (const std::exception& e) {
      row.note = e.what();
    }
  });

  const auto find = [&](const std::string& label) -> const SweepRow* {
    for (const SweepRow& r : report.rows) {
      if (r.label == label && r.feasible) return &r;
    }
    return nullptr;
  };
  const SweepRow* fast = find("fast");
  const SweepRow* normal = find("normal");
  const SweepRow* slow = find("slow");
  if (fast != nullptr && slow != nullptr) {
    const double pf = fast->solution.objective;
    const double ps = slow->solution.objective;
    report.annotations.push_back(
        {pf >= ps - 1e-6, "profit(fast) " + Fixed(pf) + " >= profit(slow) " + Fixed(ps)});
    const auto sf = fast->solution.evaluation.kpis.swaps;
    const auto ss = slow->solution.evaluation.kpis.swaps;
    report.annotations.push_back({ss >= sf, "swaps(slow) " + std::to_string(ss) +
                                                " >= swaps(fast) " + std::to_string(sf)});
    if (normal != nullptr) {
      const double pn = normal->solution.objective;
      report.annotations.push_back(
          {pf >= pn - 1e-6 && pn >= ps - 1e-6,
           "profit(fast) >= profit(normal) >= profit(slow): " + Fixed(pf) + ", " + Fixed(pn) +
               ", " + Fixed(ps)});
    }
  }
  return report;
}

SweepReport SweepFleet(const Instance& base, int lo, int hi, int step, double vehicle_day,
                       const CgParams& params, int threads) {
  if (lo < 1 || hi < lo || step < 1) {
    throw std::invalid_argument("fleet range must satisfy 1 <= LO <= HI and STEP >= 1");
  }
  SweepReport report;
  report.kind = "fleet";
  report.fingerprint =
      ConfigFingerprint(base, "fleet;" + std::to_string(lo) + ":" + std::to_string(hi) + ":" +
                                  std::to_string(step) + ";" + Fixed(vehicle_day, 6));
  std::vector<int> sizes;
  for (int f = lo; f <= hi; f += step) sizes.push_back(f);
  report.rows.resize(sizes.size());
  CgParams scenario = params;
  scenario.model.objective = ObjectiveVariant::kFleetDepreciation;
  int parking = 0;
  for (const Station& s : base.stations) parking += s.parking_spaces;

  ForEachScenario(static_cast<int>(sizes.size()), threads, [&](int k) {
    SweepRow& row = report.rows[k];
    row.parameter = sizes[k];
    row.label = "F=" + std::to_string(sizes[k]);
    if (sizes[k] > parking) {
      row.note = "infeasible: fleet exceeds total parking " + std::to_string(parking);
      return;
    }
    Instance inst = base;
    inst.fleet_size = sizes[k];
    inst.costs.vehicle_day = vehicle_day;
    try {
      row.solution = RunCg(inst, scenario);
      row.feasible = row.solution.has_solution;
      if (!row.feasible) row.note = row.solution.status;
    } catch (const std::exception& e) {
      row.note = e.what();
    }
  });

  std::vector<const SweepRow*> ok;
  for (const SweepRow& r : report.rows) {
    if (r.feasible) ok.push_back(&r);
  }
  if (ok.size() >= 2) {
    bool served_up = true;
    for (size_t k = 1; k < ok.size(); ++k) {
      served_up = served_up && ok[k]->solution.evaluation.kpis.served_requests >=
                                   ok[k - 1]->solution.evaluation.kpis.served_requests;
    }
    report.annotations.push_back({served_up, "served requests nondecreasing in fleet size"});
  }
  if (ok.size() >= 3) {
    size_t peak = 0;
    for (size_t k = 1; k < ok.size(); ++k) {
      if (ok[k]->solution.evaluation.kpis.swaps > ok[peak]->solution.evaluation.kpis.swaps) {
        peak = k;
      }
    }
    const auto swaps = [&](size_t k) { return ok[k]->solution.evaluation.kpis.swaps; };
    const bool rise_fall = swaps(peak) > swaps(0) && swaps(peak) > swaps(ok.size() - 1);
    std::string series;
    for (size_t k = 0; k < ok.size(); ++k) {
      series += (k ? "," : "") + std::to_string(swaps(k));
    }
    report.annotations.push_back({rise_fall, "swap count rises then falls across F: " + series});
  }
  return report;
}

void WriteSweepCsv(const SweepReport& report, std::ostream& out) {
  out << "scenario,parameter,feasible,profit,profit_per_vehicle,served,total_requests,"
         "service_rate,swaps,stocked_batteries,upgraded_stations,"
         "vehicle_moving_users,vehicle_relocating,vehicle_charging,vehicle_selling,"
         "vehicle_swapping,vehicle_idle,battery_charging,battery_selling,battery_swapping,"
         "battery_idle,note\n";
  for (const SweepRow& r : report.rows) {
    const Kpis& k = r.solution.evaluation.kpis;
    const double fleet = r.parameter > 0 ? r.parameter : 0.0;
    out << r.label << ',' << r.parameter << ',' << (r.feasible ? 1 : 0) << ','
        << r.solution.objective << ','
        << (fleet > 0 ? r.solution.objective / fleet : 0.0) << ',' << k.served_requests << ','
        << k.total_requests << ',' << k.service_rate << ',' << k.swaps << ','
        << k.stocked_batteries << ',' << k.upgraded_stations << ',' << k.vehicle_moving_users
        << ',' << k.vehicle_relocating << ',' << k.vehicle_charging << ',' << k.vehicle_selling
        << ',' << k.vehicle_swapping << ',' << k.vehicle_idle << ',' << k.battery_charging << ','
        << k.battery_selling << ',' << k.battery_swapping << ',' << k.battery_idle << ",\""
        << r.note << "\"\n";
  }
}

void WriteHourlyCsv(const SweepReport& report, std::ostream& out) {
  out << "scenario,hour,vehicle_charge_kwh,vehicle_sell_kwh,battery_charge_kwh,"
         "battery_sell_kwh\n";
  for (const SweepRow& r : report.rows) {
    if (!r.feasible) continue;
    for (const HourlyEnergy& h : r.solution.evaluation.kpis.hourly) {
      out << r.label << ',' << h.hour << ',' << h.vehicle_charge_kwh << ','
          << h.vehicle_sell_kwh << ',' << h.battery_charge_kwh << ',' << h.battery_sell_kwh
          << '\n';
    }
  }
}

void PrintSweepTable(const SweepReport& report, std::ostream& out) {
  out << std::left << std::setw(14) << "scenario" << std::right << std::setw(12) << "profit"
      << std::setw(8) << "served" << std::setw(8) << "swaps" << std::setw(6) << "z"
      << std::setw(6) << "I3" << std::setw(9) << "move%" << std::setw(9) << "reloc%"
      << std::setw(9) << "charge%" << std::setw(9) << "sell%" << std::setw(9) << "b.chg%"
      << std::setw(9) << "b.sell%" << "\n";
  for (const SweepRow& r : report.rows) {
    out << std::left << std::setw(14) << r.label << std::right;
    if (!r.feasible) {
      out << "  " << r.note << "\n";
      continue;
    }
    const Kpis& k = r.solution.evaluation.kpis;
    out << std::setw(12) << Fixed(r.solution.objective) << std::setw(8) << k.served_requests
        << std::setw(8) << k.swaps << std::setw(6) << k.stocked_batteries << std::setw(6)
        << k.upgraded_stations << std::setw(9) << Fixed(100 * k.vehicle_moving_users)
        << std::setw(9) << Fixed(100 * k.vehicle_relocating) << std::setw(9)
        << Fixed(100 * k.vehicle_charging) << std::setw(9) << Fixed(100 * k.vehicle_selling)
        << std::setw(9) << Fixed(100 * k.battery_charging) << std::setw(9)
        << Fixed(100 * k.battery_selling) << "\n";
  }
  for (const Annotation& a : report.annotations) {
    out << (a.pass ? "PASS " : "WARN ") << a.message << "\n";
  }
  out << "fingerprint " << report.fingerprint << "\n";
}

std::string ConfigFingerprint(const Instance& inst, const std::string& parameters) {
  std::uint64_t h = 1469598103934665603ULL;
  const auto mix = [&](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ULL;
    }
  };
  mix(SerializeInstance(inst));
  mix("|");
  mix(parameters);
  char buffer[20];
  std::snprintf(buffer, sizeof(buffer), "%016llx", static_cast<unsigned long long>(h));
  return buffer;
}

}  // namespace sevplan
