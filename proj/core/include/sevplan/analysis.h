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

// Exact-versus-heuristic comparison and the charging-speed and fleet-size
// sweeps, with CSV and table writers.

#ifndef SEVPLAN_ANALYSIS_H_
#define SEVPLAN_ANALYSIS_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "sevplan/colgen.h"
#include "sevplan/compact.h"
#include "sevplan/instance.h"

namespace sevplan {

// Gap percent truncated to two decimals: "1.90%" for (6138, 6021).
std::string FormatGap(double exact, double heuristic);

struct CompareReport {
  bool exact_has_solution = false;
  bool exact_optimal = false;
  double exact_objective = 0.0;
  double exact_bound = 0.0;
  double exact_seconds = 0.0;
  double cg_objective = 0.0;
  double cg_seconds = 0.0;
  // Against the exact optimum, or against the bound (pessimistic) when the
  // exact solve stopped early.
  double gap_percent = 0.0;
  bool gap_from_bound = false;
};

CompareReport Compare(const Instance& instance, const SolveLimits& limits,
                      const CgParams& params = {});
void PrintCompare(const CompareReport& report, std::ostream& out);

struct ChargeProfile {
  std::string label;
  int fast_rate = 0;  // levels per interval
  int slow_rate = 0;
};

// fast | normal | slow | custom:B1,B2 with rates in percent per interval.
// Throws std::invalid_argument for unknown names or rates that are not whole
// multiples of a level.
ChargeProfile ParseChargeProfile(const std::string& spec, const EnergyGrid& grid);

struct Annotation {
  bool pass = false;
  std::string message;
};

struct SweepRow {
  std::string label;
  double parameter = 0.0;  // fleet size for fleet sweeps
  bool feasible = false;
  std::string note;
  Solution solution;
};

struct SweepReport {
  std::string kind;  // "charging" or "fleet"
  std::string fingerprint;
  std::vector<SweepRow> rows;
  std::vector<Annotation> annotations;
};

SweepReport SweepCharging(const Instance& base, const std::vector<ChargeProfile>& profiles,
                          const CgParams& params = {}, int threads = 1);

SweepReport SweepFleet(const Instance& base, int lo, int hi, int step, double vehicle_day,
                       const CgParams& params = {}, int threads = 1);

void WriteSweepCsv(const SweepReport& report, std::ostream& out);
// One row per (scenario, hour): charge and sell energy of vehicles and boxes.
void WriteHourlyCsv(const SweepReport& report, std::ostream& out);
void PrintSweepTable(const SweepReport& report, std::ostream& out);

// Hex digest of the instance text and a parameter string.
std::string ConfigFingerprint(const Instance& instance, const std::string& parameters);

}  // namespace sevplan

#endif  // SEVPLAN_ANALYSIS_H_
