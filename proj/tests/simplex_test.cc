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

#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "gtest/gtest.h"
#include "sevplan/lp.h"

namespace sevplan::lp {
namespace {

constexpr double kTol = 1e-7;

std::vector<double> Dense(std::initializer_list<double> v) { return v; }

int AddRow(LinearProgram& lp, std::vector<int> idx, std::vector<double> val, Relation rel,
           double rhs) {
  return lp.AddRow(idx, val, rel, rhs);
}

// Checks primal feasibility, sign conventions of duals and reduced costs, and
// strong duality for an optimal solution.
void ExpectCertified(const LinearProgram& lp, const LpSolution& sol) {
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  for (int j = 0; j < lp.num_variables(); ++j) {
    EXPECT_GE(sol.primal[j], lp.lower[j] - 1e-6);
    EXPECT_LE(sol.primal[j], lp.upper[j] + 1e-6);
  }
  for (int i = 0; i < lp.num_rows(); ++i) {
    double act = 0.0;
    const Row& r = lp.rows[i];
    for (size_t k = 0; k < r.indices.size(); ++k) act += r.values[k] * sol.primal[r.indices[k]];
    if (r.relation != Relation::kGreaterEqual) EXPECT_LE(act, r.rhs + 1e-6);
    if (r.relation != Relation::kLessEqual) EXPECT_GE(act, r.rhs - 1e-6);
    if (r.relation == Relation::kLessEqual) EXPECT_GE(sol.duals[i], -1e-6);
    if (r.relation == Relation::kGreaterEqual) EXPECT_LE(sol.duals[i], 1e-6);
  }
  // d_j = c_j - y^T A_j, recomputed here from the rows.
  std::vector<double> d = lp.objective;
  for (int i = 0; i < lp.num_rows(); ++i) {
    const Row& r = lp.rows[i];
    for (size_t k = 0; k < r.indices.size(); ++k) d[r.indices[k]] -= sol.duals[i] * r.values[k];
  }
  for (int j = 0; j < lp.num_variables(); ++j) {
    EXPECT_NEAR(d[j], sol.reduced_costs[j], 1e-6);
    const bool at_lower = std::abs(sol.primal[j] - lp.lower[j]) < 1e-7;
    const bool at_upper = std::abs(sol.primal[j] - lp.upper[j]) < 1e-7;
    if (!at_lower && !at_upper) EXPECT_NEAR(d[j], 0.0, 1e-6) << "column " << j;
    if (at_lower && !at_upper) EXPECT_LE(d[j], 1e-6) << "column " << j;
    if (at_upper && !at_lower) EXPECT_GE(d[j], -1e-6) << "column " << j;
  }
  EXPECT_NEAR(sol.objective, sol.dual_objective, 1e-6 * (1.0 + std::abs(sol.objective)));
}

TEST(SolveLpTest, SingleBoundRow) {
  LinearProgram lp;
  lp.AddVariable(1.0);
  AddRow(lp, {0}, {1.0}, Relation::kLessEqual, 3.0);
  const LpSolution sol = SolveLp(lp);
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  EXPECT_NEAR(sol.primal[0], 3.0, kTol);
  EXPECT_NEAR(sol.objective, 3.0, kTol);
  EXPECT_NEAR(sol.duals[0], 1.0, kTol);
  ExpectCertified(lp, sol);
}

// Vertices of {a + b <= 4, a <= 2, a >= 0, b >= 0}, enumerated by hand.
TEST(SolveLpTest, TwoVariablePolygonMatchesVertexEnumeration) {
  LinearProgram lp;
  lp.AddVariable(3.0);
  lp.AddVariable(2.0);
  AddRow(lp, {0, 1}, {1.0, 1.0}, Relation::kLessEqual, 4.0);
  AddRow(lp, {0}, {1.0}, Relation::kLessEqual, 2.0);
  const double vertices[][2] = {{0, 0}, {2, 0}, {2, 2}, {0, 4}};
  double best = -1;
  for (const auto& v : vertices) best = std::max(best, 3 * v[0] + 2 * v[1]);
  const LpSolution sol = SolveLp(lp);
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  EXPECT_NEAR(sol.objective, best, kTol);
  EXPECT_NEAR(sol.objective, 10.0, kTol);
  EXPECT_NEAR(sol.primal[0], 2.0, kTol);
  EXPECT_NEAR(sol.primal[1], 2.0, kTol);
  ExpectCertified(lp, sol);
}

TEST(SolveLpTest, ContradictoryRowsAreInfeasible) {
  LinearProgram lp;
  lp.AddVariable(1.0);
  AddRow(lp, {0}, {1.0}, Relation::kGreaterEqual, 5.0);
  AddRow(lp, {0}, {1.0}, Relation::kLessEqual, 3.0);
  EXPECT_EQ(SolveLp(lp).status, LpStatus::kInfeasible);
}

TEST(SolveLpTest, ReportsUnbounded) {
  LinearProgram lp;
  lp.AddVariable(1.0);
  lp.AddVariable(1.0);
  AddRow(lp, {0, 1}, {1.0, -1.0}, Relation::kLessEqual, 1.0);
  EXPECT_EQ(SolveLp(lp).status, LpStatus::kUnbounded);
}

TEST(SolveLpTest, EqualityAndGreaterRowsCarrySignedDuals) {
  // max -x - 2y  s.t. x + y = 3, x >= 1  ->  x = 3, y = 0.
  LinearProgram lp;
  lp.AddVariable(-1.0);
  lp.AddVariable(-2.0);
  AddRow(lp, {0, 1}, {1.0, 1.0}, Relation::kEqual, 3.0);
  AddRow(lp, {0}, {1.0}, Relation::kGreaterEqual, 1.0);
  const LpSolution sol = SolveLp(lp);
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  EXPECT_NEAR(sol.objective, -3.0, kTol);
  EXPECT_NEAR(sol.duals[0], -1.0, kTol);
  ExpectCertified(lp, sol);
}

TEST(SolveLpTest, ActiveGreaterRowHasNonpositiveDual) {
  // max -x s.t. x >= 2: the row binds with dual -1.
  LinearProgram lp;
  lp.AddVariable(-1.0);
  AddRow(lp, {0}, {1.0}, Relation::kGreaterEqual, 2.0);
  const LpSolution sol = SolveLp(lp);
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  EXPECT_NEAR(sol.primal[0], 2.0, kTol);
  EXPECT_NEAR(sol.duals[0], -1.0, kTol);
  ExpectCertified(lp, sol);
}

TEST(SolveLpTest, BoundedColumnsRestAtUpperBound) {
  LinearProgram lp;
  lp.AddVariable(1.0, 0.0, 2.0);
  lp.AddVariable(1.0, -1.0, 1.0);
  AddRow(lp, {0, 1}, {1.0, 1.0}, Relation::kLessEqual, 10.0);
  const LpSolution sol = SolveLp(lp);
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  EXPECT_NEAR(sol.objective, 3.0, kTol);
  ExpectCertified(lp, sol);
}

// Beale's cycling example under the textbook rule; the stall guard must
// still terminate at the optimum 1/20.
TEST(SolveLpTest, DegenerateCyclingExampleTerminates) {
  LinearProgram lp;
  lp.AddVariable(0.75);
  lp.AddVariable(-150.0);
  lp.AddVariable(0.02);
  lp.AddVariable(-6.0);
  AddRow(lp, {0, 1, 2, 3}, {0.25, -60.0, -0.04, 9.0}, Relation::kLessEqual, 0.0);
  AddRow(lp, {0, 1, 2, 3}, {0.5, -90.0, -0.02, 3.0}, Relation::kLessEqual, 0.0);
  AddRow(lp, {2}, {1.0}, Relation::kLessEqual, 1.0);
  const LpSolution sol = SolveLp(lp);
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  EXPECT_NEAR(sol.objective, 0.05, 1e-9);
  ExpectCertified(lp, sol);
}

// Solves a 3-variable box-bounded LP by enumerating every basis: all
// triples of active constraints among rows and bounds.
double VertexOracle(const LinearProgram& lp) {
  struct Plane {
    double a[3];
    double b;
  };
  std::vector<Plane> planes;
  for (const Row& r : lp.rows) {
    Plane p{{0, 0, 0}, r.rhs};
    for (size_t k = 0; k < r.indices.size(); ++k) p.a[r.indices[k]] = r.values[k];
    planes.push_back(p);
  }
  for (int j = 0; j < 3; ++j) {
    Plane lo{{0, 0, 0}, lp.lower[j]};
    lo.a[j] = 1;
    planes.push_back(lo);
    Plane hi{{0, 0, 0}, lp.upper[j]};
    hi.a[j] = 1;
    planes.push_back(hi);
  }
  double best = -std::numeric_limits<double>::infinity();
  const int n = static_cast<int>(planes.size());
  for (int p = 0; p < n; ++p) {
    for (int q = p + 1; q < n; ++q) {
      for (int r = q + 1; r < n; ++r) {
        double m[3][4];
        const Plane* pl[3] = {&planes[p], &planes[q], &planes[r]};
        for (int i = 0; i < 3; ++i) {
          for (int j = 0; j < 3; ++j) m[i][j] = pl[i]->a[j];
          m[i][3] = pl[i]->b;
        }
        bool singular = false;
        for (int c = 0; c < 3 && !singular; ++c) {
          int piv = c;
          for (int i = c + 1; i < 3; ++i) {
            if (std::abs(m[i][c]) > std::abs(m[piv][c])) piv = i;
          }
          if (std::abs(m[piv][c]) < 1e-10) {
            singular = true;
            break;
          }
          for (int j = 0; j < 4; ++j) std::swap(m[c][j], m[piv][j]);
          for (int i = 0; i < 3; ++i) {
            if (i == c) continue;
            const double f = m[i][c] / m[c][c];
            for (int j = 0; j < 4; ++j) m[i][j] -= f * m[c][j];
          }
        }
        if (singular) continue;
        double x[3];
        for (int i = 0; i < 3; ++i) x[i] = m[i][3] / m[i][i];
        bool feasible = true;
        for (int j = 0; j < 3; ++j) {
          feasible = feasible && x[j] >= lp.lower[j] - 1e-9 && x[j] <= lp.upper[j] + 1e-9;
        }
        for (const Row& row : lp.rows) {
          double act = 0;
          for (size_t k = 0; k < row.indices.size(); ++k) act += row.values[k] * x[row.indices[k]];
          if (row.relation != Relation::kGreaterEqual) feasible = feasible && act <= row.rhs + 1e-9;
          if (row.relation != Relation::kLessEqual) feasible = feasible && act >= row.rhs - 1e-9;
        }
        if (!feasible) continue;
        double obj = 0;
        for (int j = 0; j < 3; ++j) obj += lp.objective[j] * x[j];
        best = std::max(best, obj);
      }
    }
  }
  return best;
}

TEST(SolveLpTest, RandomBoxedProgramsMatchVertexOracle) {
  std::mt19937 rng(12345);
  std::uniform_int_distribution<int> coef(-4, 4);
  std::uniform_int_distribution<int> rel(0, 2);
  int feasible = 0;
  for (int trial = 0; trial < 200; ++trial) {
    LinearProgram lp;
    for (int j = 0; j < 3; ++j) lp.AddVariable(coef(rng), 0.0, 1.0 + (trial + j) % 4);
    for (int i = 0; i < 4; ++i) {
      std::vector<int> idx = {0, 1, 2};
      std::vector<double> val = {double(coef(rng)), double(coef(rng)), double(coef(rng))};
      const Relation r = rel(rng) == 0 ? Relation::kGreaterEqual
                                       : (rel(rng) == 0 ? Relation::kEqual : Relation::kLessEqual);
      AddRow(lp, idx, val, r, coef(rng) + 2);
    }
    const double oracle = VertexOracle(lp);
    const LpSolution sol = SolveLp(lp);
    if (std::isinf(oracle)) {
      EXPECT_EQ(sol.status, LpStatus::kInfeasible) << "trial " << trial;
      continue;
    }
    ++feasible;
    ASSERT_EQ(sol.status, LpStatus::kOptimal) << "trial " << trial;
    EXPECT_NEAR(sol.objective, oracle, 1e-6) << "trial " << trial;
    ExpectCertified(lp, sol);
  }
  EXPECT_GT(feasible, 40);
}

TEST(SolveLpTest, WarmStartAfterAddingColumnsMatchesColdSolve) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  LinearProgram lp;
  const int rows = 12;
  for (int j = 0; j < 20; ++j) lp.AddVariable(u(rng));
  for (int i = 0; i < rows; ++i) {
    std::vector<int> idx;
    std::vector<double> val;
    for (int j = 0; j < 20; ++j) {
      if ((i + j) % 3 == 0) {
        idx.push_back(j);
        val.push_back(u(rng));
      }
    }
    AddRow(lp, idx, val, Relation::kLessEqual, 5.0 + i);
  }
  const LpSolution first = SolveLp(lp);
  ASSERT_EQ(first.status, LpStatus::kOptimal);

  for (int j = 20; j < 26; ++j) {
    lp.AddVariable(2.0 * u(rng));
    for (int i = 0; i < rows; i += 2) {
      lp.rows[i].indices.push_back(j);
      lp.rows[i].values.push_back(u(rng));
    }
  }
  const LpSolution cold = SolveLp(lp);
  const LpSolution warm = SolveLp(lp, &first.basis);
  ASSERT_EQ(cold.status, LpStatus::kOptimal);
  ASSERT_EQ(warm.status, LpStatus::kOptimal);
  EXPECT_NEAR(cold.objective, warm.objective, 1e-7 * (1 + std::abs(cold.objective)));
  EXPECT_GE(cold.objective, first.objective - 1e-9);
  ExpectCertified(lp, warm);
}

TEST(SolveLpTest, IsDeterministic) {
  LinearProgram lp;
  for (int j = 0; j < 6; ++j) lp.AddVariable(1.0 + j % 3);
  for (int i = 0; i < 4; ++i) {
    AddRow(lp, {i, i + 1, i + 2}, {1.0, 2.0, 1.0}, Relation::kLessEqual, 4.0);
  }
  const LpSolution a = SolveLp(lp);
  const LpSolution b = SolveLp(lp);
  EXPECT_EQ(a.primal, b.primal);
  EXPECT_EQ(a.duals, b.duals);
  EXPECT_EQ(a.iterations, b.iterations);
}

TEST(SolveLpTest, RejectsMalformedPrograms) {
  LinearProgram lp;
  lp.AddVariable(1.0);
  lp.rows.push_back({{3}, {1.0}, Relation::kLessEqual, 1.0, ""});
  EXPECT_THROW(lp.Validate(), std::invalid_argument);
  LinearProgram inf_rhs;
  inf_rhs.AddVariable(1.0);
  inf_rhs.rows.push_back({{0}, {1.0}, Relation::kLessEqual, kInfinity, ""});
  EXPECT_THROW(inf_rhs.Validate(), std::invalid_argument);
}

TEST(WriteLpFormatTest, EmitsSectionsAndNames) {
  MixedIntegerProgram mip;
  mip.lp.AddVariable(3.0, 0.0, kInfinity, "x_0");
  mip.lp.AddVariable(-1.0, 0.0, 1.0, "s_2");
  mip.lp.AddRow(std::vector<int>{0, 1}, std::vector<double>{1.0, -4.0}, Relation::kLessEqual, 0.0,
                "locker_2");
  mip.integer_variables = {1};
  std::ostringstream out;
  WriteLpFormat(mip, out);
  const std::string text = out.str();
  EXPECT_NE(text.find("Maximize"), std::string::npos);
  EXPECT_NE(text.find("Subject To"), std::string::npos);
  EXPECT_NE(text.find("locker_2:"), std::string::npos);
  EXPECT_NE(text.find("General"), std::string::npos);
  EXPECT_NE(text.find("s_2"), std::string::npos);
  EXPECT_NE(text.find("End"), std::string::npos);
}

}  // namespace
}  // namespace sevplan::lp
