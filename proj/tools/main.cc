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

// sevplan: exact and column-generation planning for a shared EV fleet.
//
//   sevplan solve-exact --instance day.json --out results
//   sevplan solve-cg --scale 10,10,100 --seed 7 --top-k 5
//   sevplan compare --scale 10,12,100 --seed 3 --time-limit 300
//   sevplan gen --scale 20,20,300 --seed 1 --out data
//   sevplan sweep-charging --instance data/two_peak.json
//   sevplan sweep-fleet --instance data/two_peak.json --fleet-range 4:16:2

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sevplan/analysis.h"
#include "sevplan/colgen.h"
#include "sevplan/compact.h"
#include "sevplan/instance.h"
#include "sevplan/network.h"

namespace sevplan {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitNoIncumbent = 2;
constexpr int kExitInputError = 3;

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Flags {
  std::string instance;
  std::string scale;
  std::uint64_t seed = 1;
  std::string objective = "eq1";
  std::string rental_gate = "inflow";
  double time_limit = 600.0;
  double gap_limit = 0.0;  // percent
  std::string kappa_max = "auto";
  int top_k = 5;
  int eta = 20;
  std::string out;
  std::vector<std::string> charge_profiles;
  std::string fleet_range;
  std::optional<double> vehicle_day;
  bool dump_network = false;
  bool lp_export = false;
  int threads = 1;
  bool trace = false;
};

std::vector<int> SplitInts(const std::string& text, char sep, size_t count,
                           const std::string& flag) {
  std::vector<int> values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, sep)) {
    try {
      size_t used = 0;
      values.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InputError(flag + ": '" + text + "' is not a list of integers");
    }
  }
  if (values.size() != count) {
    throw InputError(flag + ": expected " + std::to_string(count) + " values in '" + text + "'");
  }
  return values;
}

Instance ObtainInstance(const Flags& f) {
  if (f.instance.empty() == f.scale.empty()) {
    throw InputError("give exactly one of --instance or --scale");
  }
  if (!f.instance.empty()) return LoadInstance(f.instance);
  const std::vector<int> s = SplitInts(f.scale, ',', 3, "--scale");
  return GenerateRandom(s[0], s[1], s[2], f.seed);
}

ModelOptions MakeModelOptions(const Flags& f) {
  ModelOptions options;
  if (f.objective == "eq38") {
    options.objective = ObjectiveVariant::kFleetDepreciation;
  } else if (f.objective != "eq1") {
    throw InputError("--objective must be eq1 or eq38");
  }
  if (f.rental_gate == "literal") options.rental_gate = RentalGate::kLiteral;
  return options;
}

SolveLimits MakeLimits(const Flags& f) {
  SolveLimits limits;
  limits.time_limit_seconds = f.time_limit;
  limits.gap_limit = f.gap_limit > 0 ? f.gap_limit / 100.0 : 1e-9;
  return limits;
}

CgParams MakeCgParams(const Flags& f, std::ostream* trace) {
  CgParams params;
  if (f.kappa_max != "auto") {
    params.kappa_max = SplitInts(f.kappa_max, ',', 1, "--kappa-max")[0];
    if (params.kappa_max < 1) throw InputError("--kappa-max must be positive or auto");
  }
  if (f.top_k < 1) throw InputError("--top-k must be positive");
  if (f.eta < 1) throw InputError("--eta must be positive");
  params.top_k = f.top_k;
  params.eta = f.eta;
  params.threads = f.threads;
  params.model = MakeModelOptions(f);
  params.final_mip = MakeLimits(f);
  params.trace = trace;
  return params;
}

void ApplyVehicleDay(const Flags& f, Instance& inst) {
  if (f.vehicle_day) inst.costs.vehicle_day = *f.vehicle_day;
  if (f.objective == "eq38" && !inst.costs.vehicle_day) {
    throw InputError("--objective eq38 needs a vehicle day cost (--vehicle-day-cost)");
  }
}

std::filesystem::path OutDir(const Flags& f) {
  std::filesystem::path dir(f.out);
  std::filesystem::create_directories(dir);
  return dir;
}

void WriteFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

void MaybeDumpNetwork(const Flags& f, const StenaNetwork& net) {
  if (!f.dump_network) return;
  if (f.out.empty()) {
    net.Dump(std::cout);
    return;
  }
  std::ofstream out(OutDir(f) / "network.txt");
  net.Dump(out);
}

void PrintSummary(const Solution& sol, const std::string& solver) {
  std::printf("%s status=%s objective=%.4f bound=%.4f seconds=%.2f\n", solver.c_str(),
              sol.status.c_str(), sol.objective, sol.bound, sol.seconds);
  if (!sol.has_solution) return;
  const Kpis& k = sol.evaluation.kpis;
  std::printf("served=%lld/%lld swaps=%lld z=%lld upgraded=%d\n",
              static_cast<long long>(k.served_requests), static_cast<long long>(k.total_requests),
              static_cast<long long>(k.swaps), static_cast<long long>(k.stocked_batteries),
              k.upgraded_stations);
}

int ExitFor(const Solution& sol) {
  if (sol.has_solution) return kExitOk;
  if (sol.status == "infeasible") return kExitInfeasible;
  return kExitNoIncumbent;
}

int RunSolveExact(const Flags& f) {
  Instance inst = ObtainInstance(f);
  ApplyVehicleDay(f, inst);
  const StenaNetwork net = BuildNetwork(inst);
  MaybeDumpNetwork(f, net);
  const CompactModel model = BuildCompact(net, inst, MakeModelOptions(f));
  if (f.lp_export) {
    if (f.out.empty()) throw InputError("--lp-export needs --out");
    std::ofstream out(OutDir(f) / "compact.lp");
    lp::WriteLpFormat(model.mip, out);
  }
  const Solution sol = SolveExact(model, net, inst, MakeLimits(f));
  PrintSummary(sol, "exact");
  if (sol.has_solution && !f.out.empty()) {
    WriteFile(OutDir(f) / "solution_exact.json", SolutionToText(sol, net));
  }
  return ExitFor(sol);
}

int RunSolveCg(const Flags& f) {
  Instance inst = ObtainInstance(f);
  ApplyVehicleDay(f, inst);
  const StenaNetwork net = BuildNetwork(inst);
  MaybeDumpNetwork(f, net);
  std::ofstream trace_file;
  std::ostream* trace = nullptr;
  if (!f.out.empty()) {
    trace_file.open(OutDir(f) / "cg_trace.txt");
    trace = &trace_file;
  } else if (f.trace) {
    trace = &std::cout;
  }
  const CgParams params = MakeCgParams(f, trace);
  CgReport report;
  CgResult cg = RunColumnGeneration(net, inst, params);
  if (f.lp_export && !cg.report.infeasible) {
    if (f.out.empty()) throw InputError("--lp-export needs --out");
    std::ofstream out(OutDir(f) / "master.lp");
    lp::WriteLpFormat(BuildRmp(net, inst, cg.pool, params.model).mip, out);
  }
  Solution sol;
  if (cg.report.infeasible) {
    sol.status = "infeasible";
  } else {
    sol = SolveFinalMip(net, inst, cg.pool, params);
  }
  std::printf("cg iterations=%zu converged=%d final_rmlp=%.4f pool=%d\n",
              cg.report.iterations.size(), cg.report.converged ? 1 : 0, cg.report.final_rmlp,
              cg.pool.size());
  PrintSummary(sol, "cg");
  if (sol.has_solution && !f.out.empty()) {
    WriteFile(OutDir(f) / "solution_cg.json", SolutionToText(sol, net));
  }
  return ExitFor(sol);
}

int RunCompare(const Flags& f) {
  Instance inst = ObtainInstance(f);
  ApplyVehicleDay(f, inst);
  const CompareReport report = Compare(inst, MakeLimits(f), MakeCgParams(f, nullptr));
  PrintCompare(report, std::cout);
  if (!report.exact_has_solution) return kExitNoIncumbent;
  return kExitOk;
}

int RunGen(const Flags& f) {
  if (f.scale.empty() || !f.instance.empty()) throw InputError("gen needs --scale and no --instance");
  Instance inst = ObtainInstance(f);
  ApplyVehicleDay(f, inst);
  const std::string text = SerializeInstance(inst);
  if (f.out.empty()) {
    std::cout << text;
  } else {
    const std::vector<int> s = SplitInts(f.scale, ',', 3, "--scale");
    const std::string name = "instance_" + std::to_string(s[0]) + "_" + std::to_string(s[1]) +
                             "_" + std::to_string(s[2]) + "_seed" + std::to_string(f.seed) +
                             ".json";
    WriteFile(OutDir(f) / name, text);
    std::printf("wrote %s\n", (OutDir(f) / name).string().c_str());
  }
  return kExitOk;
}

void WriteSweepOutputs(const Flags& f, const SweepReport& report) {
  PrintSweepTable(report, std::cout);
  if (f.out.empty()) return;
  std::ofstream csv(OutDir(f) / ("sweep_" + report.kind + ".csv"));
  WriteSweepCsv(report, csv);
  std::ofstream hourly(OutDir(f) / ("hourly_" + report.kind + ".csv"));
  WriteHourlyCsv(report, hourly);
}

int RunSweepCharging(const Flags& f) {
  Instance inst = ObtainInstance(f);
  ApplyVehicleDay(f, inst);
  std::vector<std::string> names = f.charge_profiles;
  if (names.empty()) names = {"fast", "normal", "slow"};
  std::vector<ChargeProfile> profiles;
  for (const std::string& n : names) {
    try {
      profiles.push_back(ParseChargeProfile(n, inst.energy));
    } catch (const std::invalid_argument& e) {
      throw InputError(std::string("--charge-profile: ") + e.what());
    }
  }
  WriteSweepOutputs(f, SweepCharging(inst, profiles, MakeCgParams(f, nullptr), f.threads));
  return kExitOk;
}

int RunSweepFleet(const Flags& f) {
  Instance inst = ObtainInstance(f);
  if (f.fleet_range.empty()) throw InputError("sweep-fleet needs --fleet-range LO:HI:STEP");
  const std::vector<int> r = SplitInts(f.fleet_range, ':', 3, "--fleet-range");
  double vehicle_day = 0.0;
  if (f.vehicle_day) {
    vehicle_day = *f.vehicle_day;
  } else if (inst.costs.vehicle_day) {
    vehicle_day = *inst.costs.vehicle_day;
  } else {
    throw InputError("sweep-fleet needs --vehicle-day-cost or costs.vehicle_day in the instance");
  }
  WriteSweepOutputs(f, SweepFleet(inst, r[0], r[1], r[2], vehicle_day, MakeCgParams(f, nullptr),
                                  f.threads));
  return kExitOk;
}

void AddInstanceFlags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--instance", f.instance, "Instance file (JSON)");
  cmd->add_option("--scale", f.scale, "Synthetic instance scale S,T,D");
  cmd->add_option("--seed", f.seed, "Generator seed");
  cmd->add_option("--out", f.out, "Output directory");
  cmd->add_option("--vehicle-day-cost", f.vehicle_day, "Vehicle depreciation per day");
}

void AddSolverFlags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--objective", f.objective, "eq1 (profit) or eq38 (profit minus fleet cost)")
      ->check(CLI::IsMember({"eq1", "eq38"}));
  cmd->add_option("--rental-gate", f.rental_gate,
                  "inflow: rentals leave only after idling at the station; literal: rentals "
                  "arriving at a node are bounded by idle departures")
      ->check(CLI::IsMember({"inflow", "literal"}));
  cmd->add_option("--time-limit", f.time_limit, "Branch-and-bound time limit in seconds");
  cmd->add_option("--gap-limit", f.gap_limit, "Relative gap limit in percent");
  cmd->add_option("--threads", f.threads, "Worker threads for pricing and sweeps");
}

void AddCgFlags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--kappa-max", f.kappa_max, "Largest swap diversity level, or auto");
  cmd->add_option("--top-k", f.top_k, "Chains returned per pricing subproblem");
  cmd->add_option("--eta", f.eta, "Idle iterations before a column may be removed");
}

int Main(int argc, char** argv) {
  CLI::App app{"Shared EV fleet planning with V2G, B2G and battery swapping"};
  app.require_subcommand(1);
  Flags f;

  CLI::App* exact = app.add_subcommand("solve-exact", "Solve the exact integer program");
  AddInstanceFlags(exact, f);
  AddSolverFlags(exact, f);
  exact->add_flag("--dump-network", f.dump_network, "Write the network, one arc per line");
  exact->add_flag("--lp-export", f.lp_export, "Write the model in LP format to --out");

  CLI::App* cg = app.add_subcommand("solve-cg", "Run the column-generation heuristic");
  AddInstanceFlags(cg, f);
  AddSolverFlags(cg, f);
  AddCgFlags(cg, f);
  cg->add_flag("--dump-network", f.dump_network, "Write the network, one arc per line");
  cg->add_flag("--lp-export", f.lp_export, "Write the final master in LP format to --out");
  cg->add_flag("--trace", f.trace, "Print the iteration trace when --out is not given");

  CLI::App* compare = app.add_subcommand("compare", "Exact versus heuristic objective gap");
  AddInstanceFlags(compare, f);
  AddSolverFlags(compare, f);
  AddCgFlags(compare, f);

  CLI::App* gen = app.add_subcommand("gen", "Generate a synthetic instance");
  AddInstanceFlags(gen, f);

  CLI::App* charging = app.add_subcommand("sweep-charging", "Charging speed sensitivity");
  AddInstanceFlags(charging, f);
  AddSolverFlags(charging, f);
  AddCgFlags(charging, f);
  charging->add_option("--charge-profile", f.charge_profiles,
                       "fast|normal|slow|custom:B1,B2 (repeatable)");

  CLI::App* fleet = app.add_subcommand("sweep-fleet", "Fleet size sensitivity");
  AddInstanceFlags(fleet, f);
  AddSolverFlags(fleet, f);
  AddCgFlags(fleet, f);
  fleet->add_option("--fleet-range", f.fleet_range, "LO:HI:STEP");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInputError;
  }

  try {
    if (exact->parsed()) return RunSolveExact(f);
    if (cg->parsed()) return RunSolveCg(f);
    if (compare->parsed()) return RunCompare(f);
    if (gen->parsed()) return RunGen(f);
    if (charging->parsed()) return RunSweepCharging(f);
    if (fleet->parsed()) return RunSweepFleet(f);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what();
    if (!e.field().empty()) std::cerr << " (field " << e.field() << ")";
    if (e.line() > 0) std::cerr << " at line " << e.line();
    std::cerr << "\n";
    return kExitInputError;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace
}  // namespace sevplan

int main(int argc, char** argv) { return sevplan::Main(argc, argv); }
