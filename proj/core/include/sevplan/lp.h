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

// Linear and mixed-integer programming engine.
//
// A bounded revised primal simplex (sparse LU basis factorization with eta
// updates) and a best-bound branch-and-bound on top of it. Every program is a
// maximization. Dual values follow the maximization convention: duals of <=
// rows are >= 0, duals of >= rows are <= 0, duals of = rows are free, and the
// reduced cost of column j is c_j - y^T A_j.

#ifndef SEVPLAN_LP_H_
#define SEVPLAN_LP_H_

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sevplan::lp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Relation { kLessEqual, kEqual, kGreaterEqual };

struct Row {
  std::vector<int> indices;
  std::vector<double> values;
  Relation relation = Relation::kLessEqual;
  double rhs = 0.0;
  std::string name;
};

// max objective^T x + objective_offset  s.t. rows, lower <= x <= upper.
struct LinearProgram {
  std::vector<double> objective;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<std::string> variable_names;
  std::vector<Row> rows;
  double objective_offset = 0.0;

  int AddVariable(double cost, double lo = 0.0, double hi = kInfinity,
                  std::string name = {});
  int AddRow(std::span<const int> indices, std::span<const double> values,
             Relation relation, double rhs, std::string name = {});
  int num_variables() const { return static_cast<int>(objective.size()); }
  int num_rows() const { return static_cast<int>(rows.size()); }

  // Throws std::invalid_argument when dimensions, bounds or right-hand sides
  // are inconsistent.
  void Validate() const;
};

struct MixedIntegerProgram {
  LinearProgram lp;
  std::vector<int> integer_variables;
};

struct Tolerances {
  double feasibility = 1e-7;
  double dual = 1e-6;
  double pivot = 1e-9;
  double integrality = 1e-6;
  double optimality = 1e-7;
};

enum class VarStatus : std::uint8_t { kBasic, kAtLower, kAtUpper, kFree };

// Statuses of structural columns and of row slacks. A valid basis has exactly
// num_rows kBasic entries across both vectors.
struct Basis {
  std::vector<VarStatus> columns;
  std::vector<VarStatus> rows;
  bool empty() const { return columns.empty() && rows.empty(); }
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

const char* ToString(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  double objective = 0.0;  // includes objective_offset
  std::vector<double> primal;
  std::vector<double> duals;
  std::vector<double> reduced_costs;
  std::vector<double> row_activity;
  Basis basis;
  std::int64_t iterations = 0;

  // y^T b plus the reduced-cost contribution of variables resting at nonzero
  // bounds, plus the offset. Equals `objective` at an optimal basis.
  double dual_objective = 0.0;
};

// Raised when the basis cannot be factorized or no acceptable pivot exists.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SimplexOptions {
  Tolerances tolerances;
  std::int64_t iteration_limit = 0;  // 0 selects an automatic limit
  int refactor_interval = 64;
  int stall_threshold = 60;  // degenerate pivots before Bland's rule
};

// Re-solvable simplex over a fixed constraint matrix. Bounds may change
// between solves (branch-and-bound), and the last basis is reused as the
// starting point.
class SimplexSolver {
 public:
  explicit SimplexSolver(const LinearProgram& lp, SimplexOptions options = {});
  ~SimplexSolver();
  SimplexSolver(const SimplexSolver&) = delete;
  SimplexSolver& operator=(const SimplexSolver&) = delete;

  void SetVariableBounds(int column, double lower, double upper);
  double variable_lower(int column) const;
  double variable_upper(int column) const;

  // Installs a starting basis. A basis whose column vector is shorter than
  // the current column count is padded with kAtLower; a basis with the wrong
  // number of basic entries is ignored.
  void SetBasis(const Basis& basis);

  LpSolution Solve();

 private:
  class Impl;
  std::unique_ptr<Impl> impl_;
};

LpSolution SolveLp(const LinearProgram& lp, const Basis* warm_start = nullptr,
                   const SimplexOptions& options = {});

struct MipOptions {
  SimplexOptions simplex;
  double time_limit_seconds = 600.0;
  double relative_gap = 1e-9;  // stop when (bound - incumbent) is this small
  std::int64_t node_limit = 0;  // 0 = unlimited
};

enum class MipStatus {
  kOptimal,
  kInfeasible,
  kUnbounded,
  kLimitWithIncumbent,
  kLimitNoIncumbent,
};

const char* ToString(MipStatus status);

struct MipResult {
  MipStatus status = MipStatus::kInfeasible;
  bool has_incumbent = false;
  bool proven_optimal = false;
  double objective = 0.0;  // incumbent value
  double bound = 0.0;      // valid upper bound on the optimum
  std::vector<double> primal;
  LpSolution root;         // root relaxation
  LpSolution incumbent_lp;  // node relaxation that produced the incumbent
  std::int64_t nodes = 0;
  double seconds = 0.0;
};

MipResult SolveMip(const MixedIntegerProgram& mip, const MipOptions& options = {});

// CPLEX-LP text export. Column and row names are taken from the program; a
// missing name falls back to c<j> / r<i>.
void WriteLpFormat(const MixedIntegerProgram& mip, std::ostream& out);

}  // namespace sevplan::lp

#endif  // SEVPLAN_LP_H_
