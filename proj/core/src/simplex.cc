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

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "sevplan/lp.h"

namespace sevplan::lp {
namespace {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::ColMajor, int>;
using LuSolver = Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>>;

bool IsFinite(double v) { return std::isfinite(v); }

}  // namespace

int LinearProgram::AddVariable(double cost, double lo, double hi,
                               std::string name) {
  objective.push_back(cost);
  lower.push_back(lo);
  upper.push_back(hi);
  variable_names.push_back(std::move(name));
  return num_variables() - 1;
}

int LinearProgram::AddRow(std::span<const int> indices,
                          std::span<const double> values, Relation relation,
                          double rhs, std::string name) {
  Row row;
  row.indices.assign(indices.begin(), indices.end());
  row.values.assign(values.begin(), values.end());
  row.relation = relation;
  row.rhs = rhs;
  row.name = std::move(name);
  rows.push_back(std::move(row));
  return num_rows() - 1;
}

void LinearProgram::Validate() const {
  const int n = num_variables();
  if (static_cast<int>(lower.size()) != n ||
      static_cast<int>(upper.size()) != n) {
    throw std::invalid_argument("bound vectors do not match column count");
  }
  for (int j = 0; j < n; ++j) {
    if (std::isnan(lower[j]) || std::isnan(upper[j]) || lower[j] > upper[j]) {
      throw std::invalid_argument("invalid bounds on column " +
                                  std::to_string(j));
    }
    if (!IsFinite(objective[j])) {
      throw std::invalid_argument("non-finite objective on column " +
                                  std::to_string(j));
    }
  }
  for (int i = 0; i < num_rows(); ++i) {
    const Row& row = rows[i];
    if (row.indices.size() != row.values.size()) {
      throw std::invalid_argument("row " + std::to_string(i) +
                                  " has mismatched index/value lengths");
    }
    if (!IsFinite(row.rhs)) {
      throw std::invalid_argument("row " + std::to_string(i) +
                                  " has a non-finite right-hand side");
    }
    for (int j : row.indices) {
      if (j < 0 || j >= n) {
        throw std::invalid_argument("row " + std::to_string(i) +
                                    " references unknown column");
      }
    }
  }
}

const char* ToString(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
    case LpStatus::kIterationLimit:
      return "iteration_limit";
  }
  return "unknown";
}

class SimplexSolver::Impl {
 public:
  Impl(const LinearProgram& lp, SimplexOptions options)
      : options_(options), m_(lp.num_rows()), n_(lp.num_variables()) {
    lp.Validate();
    offset_ = lp.objective_offset;
    const int total = n_ + m_;
    cost_.assign(total, 0.0);
    lower_.assign(total, 0.0);
    upper_.assign(total, 0.0);
    for (int j = 0; j < n_; ++j) {
      cost_[j] = lp.objective[j];
      lower_[j] = lp.lower[j];
      upper_[j] = lp.upper[j];
    }
    rhs_.resize(m_);
    for (int i = 0; i < m_; ++i) {
      const Row& row = lp.rows[i];
      rhs_[i] = row.rhs;
      switch (row.relation) {
        case Relation::kLessEqual:
          lower_[n_ + i] = 0.0;
          upper_[n_ + i] = kInfinity;
          break;
        case Relation::kGreaterEqual:
          lower_[n_ + i] = -kInfinity;
          upper_[n_ + i] = 0.0;
          break;
        case Relation::kEqual:
          lower_[n_ + i] = 0.0;
          upper_[n_ + i] = 0.0;
          break;
      }
    }
    // Column-major copy of the structural matrix; duplicates are summed.
    std::vector<std::vector<std::pair<int, double>>> columns(n_);
    for (int i = 0; i < m_; ++i) {
      const Row& row = lp.rows[i];
      for (std::size_t k = 0; k < row.indices.size(); ++k) {
        if (row.values[k] != 0.0) {
          columns[row.indices[k]].emplace_back(i, row.values[k]);
        }
      }
    }
    col_start_.assign(n_ + 1, 0);
    for (int j = 0; j < n_; ++j) {
      auto& col = columns[j];
      std::sort(col.begin(), col.end());
      std::vector<std::pair<int, double>> merged;
      for (const auto& [r, v] : col) {
        if (!merged.empty() && merged.back().first == r) {
          merged.back().second += v;
        } else {
          merged.emplace_back(r, v);
        }
      }
      for (const auto& [r, v] : merged) {
        col_row_.push_back(r);
        col_val_.push_back(v);
      }
      col_start_[j + 1] = static_cast<int>(col_row_.size());
    }
    status_.assign(total, VarStatus::kAtLower);
    SetSlackBasis();
  }

  void SetBounds(int j, double lo, double hi) {
    if (j < 0 || j >= n_ || lo > hi) {
      throw std::invalid_argument("SetVariableBounds: bad column or bounds");
    }
    lower_[j] = lo;
    upper_[j] = hi;
  }
  double lower(int j) const { return lower_.at(j); }
  double upper(int j) const { return upper_.at(j); }

  void SetBasis(const Basis& basis) {
    if (static_cast<int>(basis.rows.size()) != m_ ||
        static_cast<int>(basis.columns.size()) > n_) {
      return;
    }
    std::vector<VarStatus> status(n_ + m_, VarStatus::kAtLower);
    int basic_count = 0;
    for (int j = 0; j < n_; ++j) {
      status[j] = j < static_cast<int>(basis.columns.size())
                      ? basis.columns[j]
                      : VarStatus::kAtLower;
      if (status[j] == VarStatus::kBasic) ++basic_count;
    }
    for (int i = 0; i < m_; ++i) {
      status[n_ + i] = basis.rows[i];
      if (status[n_ + i] == VarStatus::kBasic) ++basic_count;
    }
    if (basic_count != m_) return;
    status_ = std::move(status);
  }

  LpSolution Solve();

 private:
  void SetSlackBasis() {
    for (int j = 0; j < n_; ++j) status_[j] = DefaultNonbasic(j);
    for (int i = 0; i < m_; ++i) status_[n_ + i] = VarStatus::kBasic;
  }

  VarStatus DefaultNonbasic(int j) const {
    if (IsFinite(lower_[j])) return VarStatus::kAtLower;
    if (IsFinite(upper_[j])) return VarStatus::kAtUpper;
    return VarStatus::kFree;
  }

  // Normalizes nonbasic statuses against the current bounds and sets their
  // values; rebuilds the basic heading.
  void InstallStatuses() {
    const int total = n_ + m_;
    x_.assign(total, 0.0);
    basic_.clear();
    position_.assign(total, -1);
    for (int j = 0; j < total; ++j) {
      VarStatus& s = status_[j];
      if (s == VarStatus::kBasic) {
        position_[j] = static_cast<int>(basic_.size());
        basic_.push_back(j);
        continue;
      }
      if (s == VarStatus::kAtLower && !IsFinite(lower_[j])) s = DefaultNonbasic(j);
      if (s == VarStatus::kAtUpper && !IsFinite(upper_[j])) s = DefaultNonbasic(j);
      if (s == VarStatus::kFree && (IsFinite(lower_[j]) || IsFinite(upper_[j]))) {
        s = DefaultNonbasic(j);
      }
      x_[j] = NonbasicValue(j);
    }
  }

  double NonbasicValue(int j) const {
    switch (status_[j]) {
      case VarStatus::kAtLower:
        return lower_[j];
      case VarStatus::kAtUpper:
        return upper_[j];
      default:
        return 0.0;
    }
  }

  bool Factorize() {
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(static_cast<std::size_t>(m_) * 3);
    for (int k = 0; k < m_; ++k) {
      const int j = basic_[k];
      if (j >= n_) {
        triplets.emplace_back(j - n_, k, 1.0);
      } else {
        for (int p = col_start_[j]; p < col_start_[j + 1]; ++p) {
          triplets.emplace_back(col_row_[p], k, col_val_[p]);
        }
      }
    }
    SparseMatrix basis_matrix(m_, m_);
    basis_matrix.setFromTriplets(triplets.begin(), triplets.end());
    basis_matrix.makeCompressed();
    lu_ = std::make_unique<LuSolver>();
    lu_->analyzePattern(basis_matrix);
    lu_->factorize(basis_matrix);
    eta_row_.clear();
    eta_pivot_.clear();
    eta_start_.assign(1, 0);
    eta_index_.clear();
    eta_value_.clear();
    pivots_since_refactor_ = 0;
    if (lu_->info() != Eigen::Success) return false;
    // A numerically singular basis can still "succeed"; reject tiny pivots.
    Eigen::VectorXd probe = Eigen::VectorXd::Ones(m_);
    Eigen::VectorXd sol = lu_->solve(probe);
    return sol.allFinite();
  }

  // Replaces the basis by the slack basis, keeping structural columns at the
  // bound nearest to their current value.
  void RepairBasis() {
    for (int j = 0; j < n_; ++j) {
      if (status_[j] != VarStatus::kBasic) continue;
      const double v = x_.empty() ? 0.0 : x_[j];
      if (IsFinite(lower_[j]) && IsFinite(upper_[j])) {
        status_[j] = std::abs(v - lower_[j]) <= std::abs(upper_[j] - v)
                         ? VarStatus::kAtLower
                         : VarStatus::kAtUpper;
      } else {
        status_[j] = DefaultNonbasic(j);
      }
    }
    for (int i = 0; i < m_; ++i) status_[n_ + i] = VarStatus::kBasic;
    InstallStatuses();
  }

  void EnsureFactorized() {
    for (int attempt = 0; attempt < 3; ++attempt) {
      if (m_ == 0 || Factorize()) return;
      ++repairs_;
      RepairBasis();
    }
    throw NumericalError("basis factorization failed after repair");
  }

  void Ftran(Eigen::VectorXd& v) const {
    if (m_ == 0) return;
    v = lu_->solve(v);
    const int etas = static_cast<int>(eta_row_.size());
    for (int k = 0; k < etas; ++k) {
      const int r = eta_row_[k];
      const double xr = v[r] / eta_pivot_[k];
      v[r] = xr;
      if (xr == 0.0) continue;
      for (int p = eta_start_[k]; p < eta_start_[k + 1]; ++p) {
        v[eta_index_[p]] -= eta_value_[p] * xr;
      }
    }
  }

  void Btran(Eigen::VectorXd& v) const {
    if (m_ == 0) return;
    for (int k = static_cast<int>(eta_row_.size()) - 1; k >= 0; --k) {
      const int r = eta_row_[k];
      double acc = v[r];
      for (int p = eta_start_[k]; p < eta_start_[k + 1]; ++p) {
        acc -= v[eta_index_[p]] * eta_value_[p];
      }
      v[r] = acc / eta_pivot_[k];
    }
    v = lu_->transpose().solve(v);
  }

  void ComputeBasicValues() {
    Eigen::VectorXd r(m_);
    for (int i = 0; i < m_; ++i) r[i] = rhs_[i];
    for (int j = 0; j < n_ + m_; ++j) {
      if (status_[j] == VarStatus::kBasic || x_[j] == 0.0) continue;
      if (j >= n_) {
        r[j - n_] -= x_[j];
      } else {
        for (int p = col_start_[j]; p < col_start_[j + 1]; ++p) {
          r[col_row_[p]] -= col_val_[p] * x_[j];
        }
      }
    }
    Ftran(r);
    for (int k = 0; k < m_; ++k) x_[basic_[k]] = r[k];
  }

  double Dot(const Eigen::VectorXd& y, int j) const {
    if (j >= n_) return y[j - n_];
    double s = 0.0;
    for (int p = col_start_[j]; p < col_start_[j + 1]; ++p) {
      s += y[col_row_[p]] * col_val_[p];
    }
    return s;
  }

  void LoadColumn(int j, Eigen::VectorXd& v) const {
    v.setZero(m_);
    if (j >= n_) {
      v[j - n_] = 1.0;
      return;
    }
    for (int p = col_start_[j]; p < col_start_[j + 1]; ++p) {
      v[col_row_[p]] = col_val_[p];
    }
  }

  // Sum of bound violations of basic variables.
  double Infeasibility() const {
    const double tol = options_.tolerances.feasibility;
    double sum = 0.0;
    for (int k = 0; k < m_; ++k) {
      const int j = basic_[k];
      if (x_[j] < lower_[j] - tol) sum += lower_[j] - x_[j];
      if (x_[j] > upper_[j] + tol) sum += x_[j] - upper_[j];
    }
    return sum;
  }

  double PhaseTwoObjective() const {
    double s = 0.0;
    for (int j = 0; j < n_; ++j) s += cost_[j] * x_[j];
    return s;
  }

  void BasicCosts(bool phase_one, Eigen::VectorXd& cb) const {
    const double tol = options_.tolerances.feasibility;
    cb.setZero(m_);
    for (int k = 0; k < m_; ++k) {
      const int j = basic_[k];
      if (phase_one) {
        if (x_[j] < lower_[j] - tol) cb[k] = 1.0;
        else if (x_[j] > upper_[j] + tol) cb[k] = -1.0;
      } else {
        cb[k] = cost_[j];
      }
    }
  }

  struct Ratio {
    int row = -1;
    double theta = kInfinity;
    bool flip = false;
    bool unbounded = false;
    double target = 0.0;
  };

  Ratio RatioTest(int q, int dir, const Eigen::VectorXd& alpha,
                  bool bland) const;
  void Pivot(int q, int dir, const Eigen::VectorXd& alpha, const Ratio& ratio);
  LpSolution Finish(LpStatus status);

  SimplexOptions options_;
  int m_;
  int n_;
  double offset_ = 0.0;
  std::vector<double> cost_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<double> rhs_;
  std::vector<int> col_start_;
  std::vector<int> col_row_;
  std::vector<double> col_val_;

  std::vector<VarStatus> status_;
  std::vector<int> basic_;
  std::vector<int> position_;
  std::vector<double> x_;

  std::unique_ptr<LuSolver> lu_;
  std::vector<int> eta_row_;
  std::vector<double> eta_pivot_;
  std::vector<int> eta_start_{0};
  std::vector<int> eta_index_;
  std::vector<double> eta_value_;
  int pivots_since_refactor_ = 0;
  int repairs_ = 0;
  std::int64_t iterations_ = 0;
};

SimplexSolver::Impl::Ratio SimplexSolver::Impl::RatioTest(
    int q, int dir, const Eigen::VectorXd& alpha, bool bland) const {
  const double ftol = options_.tolerances.feasibility;
  const double ptol = options_.tolerances.pivot;
  Ratio result;
  const double range = upper_[q] - lower_[q];

  struct Candidate {
    int row;
    double exact;
    double relaxed;
    double target;
  };
  std::vector<Candidate> candidates;
  for (int k = 0; k < m_; ++k) {
    const double a = alpha[k];
    if (std::abs(a) <= ptol) continue;
    const double delta = -dir * a;
    const int j = basic_[k];
    const double v = x_[j];
    const double lo = lower_[j];
    const double hi = upper_[j];
    if (delta < 0.0) {
      if (v > hi + ftol) {
        const double t = (v - hi) / -delta;
        candidates.push_back({k, t, t, hi});
      } else if (IsFinite(lo) && v >= lo - ftol) {
        candidates.push_back({k, std::max(0.0, v - lo) / -delta,
                              (v - lo + ftol) / -delta, lo});
      }
    } else {
      if (v < lo - ftol) {
        const double t = (lo - v) / delta;
        candidates.push_back({k, t, t, lo});
      } else if (IsFinite(hi) && v <= hi + ftol) {
        candidates.push_back({k, std::max(0.0, hi - v) / delta,
                              (hi - v + ftol) / delta, hi});
      }
    }
  }

  if (bland) {
    const Candidate* best = nullptr;
    for (const Candidate& c : candidates) {
      if (best == nullptr || c.exact < best->exact - 1e-12 ||
          (c.exact <= best->exact + 1e-12 &&
           basic_[c.row] < basic_[best->row])) {
        best = &c;
      }
    }
    if (IsFinite(range) && (best == nullptr || range <= best->exact)) {
      result.flip = true;
      result.theta = range;
      return result;
    }
    if (best == nullptr) {
      result.unbounded = true;
      return result;
    }
    result.row = best->row;
    result.theta = best->exact;
    result.target = best->target;
    return result;
  }

  double theta_max = kInfinity;
  for (const Candidate& c : candidates) theta_max = std::min(theta_max, c.relaxed);
  if (IsFinite(range) && range <= theta_max) {
    result.flip = true;
    result.theta = range;
    return result;
  }
  if (!IsFinite(theta_max)) {
    result.unbounded = true;
    return result;
  }
  const Candidate* best = nullptr;
  for (const Candidate& c : candidates) {
    if (c.exact > theta_max) continue;
    if (best == nullptr) {
      best = &c;
      continue;
    }
    const double ab = std::abs(alpha[best->row]);
    const double ac = std::abs(alpha[c.row]);
    if (ac > ab * (1.0 + 1e-12) ||
        (ac >= ab * (1.0 - 1e-12) && basic_[c.row] < basic_[best->row])) {
      best = &c;
    }
  }
  result.row = best->row;
  result.theta = best->exact;
  result.target = best->target;
  return result;
}

void SimplexSolver::Impl::Pivot(int q, int dir, const Eigen::VectorXd& alpha,
                                const Ratio& ratio) {
  const double step = dir * ratio.theta;
  if (step != 0.0) {
    x_[q] += step;
    for (int k = 0; k < m_; ++k) {
      if (alpha[k] != 0.0) x_[basic_[k]] -= step * alpha[k];
    }
  }
  if (ratio.flip) {
    status_[q] = dir > 0 ? VarStatus::kAtUpper : VarStatus::kAtLower;
    x_[q] = NonbasicValue(q);
    return;
  }
  const int r = ratio.row;
  const int leaving = basic_[r];
  x_[leaving] = ratio.target;
  if (ratio.target == lower_[leaving]) {
    status_[leaving] = VarStatus::kAtLower;
  } else {
    status_[leaving] = VarStatus::kAtUpper;
  }
  position_[leaving] = -1;
  basic_[r] = q;
  position_[q] = r;
  status_[q] = VarStatus::kBasic;

  eta_row_.push_back(r);
  eta_pivot_.push_back(alpha[r]);
  for (int k = 0; k < m_; ++k) {
    if (k != r && std::abs(alpha[k]) > 1e-14) {
      eta_index_.push_back(k);
      eta_value_.push_back(alpha[k]);
    }
  }
  eta_start_.push_back(static_cast<int>(eta_index_.size()));
  ++pivots_since_refactor_;
}

LpSolution SimplexSolver::Impl::Solve() {
  const Tolerances& tol = options_.tolerances;
  const std::int64_t limit =
      options_.iteration_limit > 0
          ? options_.iteration_limit
          : 200000 + 50 * static_cast<std::int64_t>(n_ + m_);
  iterations_ = 0;
  repairs_ = 0;
  InstallStatuses();
  EnsureFactorized();
  ComputeBasicValues();

  Eigen::VectorXd cb(m_);
  Eigen::VectorXd y(m_);
  Eigen::VectorXd alpha(m_);
  bool bland = false;
  int stall = 0;
  double best_progress = -kInfinity;
  bool last_phase_one = true;
  int cleanups = 0;

  while (true) {
    if (iterations_ >= limit) return Finish(LpStatus::kIterationLimit);
    if (pivots_since_refactor_ >= options_.refactor_interval) {
      EnsureFactorized();
      ComputeBasicValues();
    }
    const double infeasibility = Infeasibility();
    const bool phase_one = infeasibility > 0.0;
    if (phase_one != last_phase_one) {
      bland = false;
      stall = 0;
      best_progress = -kInfinity;
      last_phase_one = phase_one;
    }
    const double progress = phase_one ? -infeasibility : PhaseTwoObjective();
    if (progress > best_progress + 1e-11 * (1.0 + std::abs(progress))) {
      best_progress = progress;
      stall = 0;
      bland = false;
    } else if (++stall > options_.stall_threshold) {
      bland = true;
    }

    BasicCosts(phase_one, cb);
    y = cb;
    Btran(y);

    int entering = -1;
    int dir = 0;
    double best = 0.0;
    for (int j = 0; j < n_ + m_; ++j) {
      const VarStatus s = status_[j];
      if (s == VarStatus::kBasic) continue;
      if (lower_[j] == upper_[j]) continue;
      const double c = phase_one ? 0.0 : cost_[j];
      const double d = c - Dot(y, j);
      int candidate_dir = 0;
      if ((s == VarStatus::kAtLower || s == VarStatus::kFree) &&
          d > tol.optimality) {
        candidate_dir = 1;
      } else if ((s == VarStatus::kAtUpper || s == VarStatus::kFree) &&
                 d < -tol.optimality) {
        candidate_dir = -1;
      }
      if (candidate_dir == 0) continue;
      if (bland) {
        entering = j;
        dir = candidate_dir;
        break;
      }
      if (std::abs(d) > best) {
        best = std::abs(d);
        entering = j;
        dir = candidate_dir;
      }
    }

    if (entering < 0) {
      // Confirm on a fresh factorization before declaring termination.
      if (pivots_since_refactor_ > 0 && cleanups < 5) {
        ++cleanups;
        EnsureFactorized();
        ComputeBasicValues();
        continue;
      }
      return Finish(phase_one ? LpStatus::kInfeasible : LpStatus::kOptimal);
    }

    LoadColumn(entering, alpha);
    Ftran(alpha);
    const Ratio ratio = RatioTest(entering, dir, alpha, bland);
    if (ratio.unbounded) {
      if (phase_one) {
        throw NumericalError("phase one direction without a blocking row");
      }
      return Finish(LpStatus::kUnbounded);
    }
    Pivot(entering, dir, alpha, ratio);
    ++iterations_;
  }
}

LpSolution SimplexSolver::Impl::Finish(LpStatus status) {
  LpSolution sol;
  sol.status = status;
  sol.iterations = iterations_;
  sol.primal.assign(x_.begin(), x_.begin() + n_);
  sol.row_activity.resize(m_);
  for (int i = 0; i < m_; ++i) sol.row_activity[i] = rhs_[i] - x_[n_ + i];
  sol.objective = offset_ + PhaseTwoObjective();
  sol.basis.columns.assign(status_.begin(), status_.begin() + n_);
  sol.basis.rows.assign(status_.begin() + n_, status_.end());

  Eigen::VectorXd cb(m_);
  BasicCosts(false, cb);
  Eigen::VectorXd y = cb;
  if (m_ > 0) Btran(y);
  sol.duals.assign(y.data(), y.data() + m_);
  sol.reduced_costs.resize(n_);
  double dual_obj = offset_;
  for (int i = 0; i < m_; ++i) dual_obj += y[i] * rhs_[i];
  for (int j = 0; j < n_ + m_; ++j) {
    const double d = cost_[j] - Dot(y, j);
    if (j < n_) sol.reduced_costs[j] = d;
    if (status_[j] != VarStatus::kBasic && x_[j] != 0.0) dual_obj += d * x_[j];
  }
  sol.dual_objective = dual_obj;
  return sol;
}

SimplexSolver::SimplexSolver(const LinearProgram& lp, SimplexOptions options)
    : impl_(std::make_unique<Impl>(lp, options)) {}
SimplexSolver::~SimplexSolver() = default;

void SimplexSolver::SetVariableBounds(int column, double lower, double upper) {
  impl_->SetBounds(column, lower, upper);
}
double SimplexSolver::variable_lower(int column) const {
  return impl_->lower(column);
}
double SimplexSolver::variable_upper(int column) const {
  return impl_->upper(column);
}
void SimplexSolver::SetBasis(const Basis& basis) { impl_->SetBasis(basis); }
LpSolution SimplexSolver::Solve() { return impl_->Solve(); }

LpSolution SolveLp(const LinearProgram& lp, const Basis* warm_start,
                   const SimplexOptions& options) {
  SimplexSolver solver(lp, options);
  if (warm_start != nullptr) solver.SetBasis(*warm_start);
  return solver.Solve();
}

}  // namespace sevplan::lp
