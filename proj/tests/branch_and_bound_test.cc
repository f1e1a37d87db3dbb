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
#include <vector>

#include "gtest/gtest.h"
#include "sevplan/lp.h"

namespace sevplan::lp {
namespace {

TEST(SolveMipTest, RoundsDownFractionalBound) {
  MixedIntegerProgram mip;
  mip.lp.AddVariable(1.0);
  mip.lp.AddRow(std::vector<int>{0}, std::vector<double>{1.0}, Relation::kLessEqual, 2.5);
  mip.integer_variables = {0};
  const MipResult r = SolveMip(mip);
  ASSERT_EQ(r.status, MipStatus::kOptimal);
  EXPECT_TRUE(r.proven_optimal);
  EXPECT_DOUBLE_EQ(r.primal[0], 2.0);
  EXPECT_NEAR(r.objective, 2.0, 1e-9);
  EXPECT_NEAR(r.root.objective, 2.5, 1e-9);
}

TEST(SolveMipTest, TwoItemKnapsackPicksHeavierItem) {
  // max 5a + 4b s.t. 3a + 2b <= 4: both items do not fit.
  MixedIntegerProgram mip;
  mip.lp.AddVariable(5.0, 0.0, 1.0);
  mip.lp.AddVariable(4.0, 0.0, 1.0);
  mip.lp.AddRow(std::vector<int>{0, 1}, std::vector<double>{3, 2}, Relation::kLessEqual, 4);
  mip.integer_variables = {0, 1};
  double best = -1;
  for (int a = 0; a <= 1; ++a) {
    for (int b = 0; b <= 1; ++b) {
      if (3 * a + 2 * b <= 4) best = std::max(best, 5.0 * a + 4.0 * b);
    }
  }
  const MipResult r = SolveMip(mip);
  ASSERT_EQ(r.status, MipStatus::kOptimal);
  EXPECT_NEAR(r.objective, best, 1e-9);
  EXPECT_NEAR(r.objective, 5.0, 1e-9);
  EXPECT_DOUBLE_EQ(r.primal[0], 1.0);
  EXPECT_LE(r.objective, r.root.objective + 1e-9);
}

TEST(SolveMipTest, BinaryKnapsack) {
  // max 5a + 4b + 3c  s.t. 2a + 3b + c <= 5, 4a + b + 2c <= 11, binaries.
  MixedIntegerProgram mip;
  mip.lp.AddVariable(5.0, 0.0, 1.0);
  mip.lp.AddVariable(4.0, 0.0, 1.0);
  mip.lp.AddVariable(3.0, 0.0, 1.0);
  mip.lp.AddRow(std::vector<int>{0, 1, 2}, std::vector<double>{2, 3, 1}, Relation::kLessEqual, 5);
  mip.lp.AddRow(std::vector<int>{0, 1, 2}, std::vector<double>{4, 1, 2}, Relation::kLessEqual, 11);
  mip.integer_variables = {0, 1, 2};
  double best = -1;
  for (int m = 0; m < 8; ++m) {
    const int a = m & 1, b = (m >> 1) & 1, c = (m >> 2) & 1;
    if (2 * a + 3 * b + c <= 5 && 4 * a + b + 2 * c <= 11) best = std::max(best, 5.0 * a + 4 * b + 3 * c);
  }
  const MipResult r = SolveMip(mip);
  ASSERT_EQ(r.status, MipStatus::kOptimal);
  EXPECT_NEAR(r.objective, best, 1e-9);
  EXPECT_LE(r.objective, r.bound + 1e-9);
}

TEST(SolveMipTest, IntegralRelaxationNeedsOnlyTheRoot) {
  MixedIntegerProgram mip;
  mip.lp.AddVariable(1.0);
  mip.lp.AddVariable(1.0);
  mip.lp.AddRow(std::vector<int>{0, 1}, std::vector<double>{1, 1}, Relation::kLessEqual, 4);
  mip.lp.AddRow(std::vector<int>{0}, std::vector<double>{1}, Relation::kLessEqual, 3);
  mip.integer_variables = {0, 1};
  const MipResult r = SolveMip(mip);
  ASSERT_EQ(r.status, MipStatus::kOptimal);
  EXPECT_EQ(r.nodes, 1);
  EXPECT_NEAR(r.objective, 4.0, 1e-9);
}

TEST(SolveMipTest, IntegerInfeasibleDespiteFeasibleRelaxation) {
  // 2x = 1 has the relaxed solution x = 0.5 only.
  MixedIntegerProgram mip;
  mip.lp.AddVariable(1.0, 0.0, 4.0);
  mip.lp.AddRow(std::vector<int>{0}, std::vector<double>{2}, Relation::kEqual, 1);
  mip.integer_variables = {0};
  const MipResult r = SolveMip(mip);
  EXPECT_EQ(r.status, MipStatus::kInfeasible);
  EXPECT_FALSE(r.has_incumbent);
}

TEST(SolveMipTest, UnboundedRelaxationIsReported) {
  MixedIntegerProgram mip;
  mip.lp.AddVariable(1.0);
  mip.lp.AddVariable(1.0);
  mip.lp.AddRow(std::vector<int>{0, 1}, std::vector<double>{1, -1}, Relation::kLessEqual, 0.5);
  mip.integer_variables = {0, 1};
  EXPECT_EQ(SolveMip(mip).status, MipStatus::kUnbounded);
}

// Exhaustive search over the integer box for the oracle.
double BruteForce(const MixedIntegerProgram& mip, int box) {
  const int n = mip.lp.num_variables();
  std::vector<int> x(n, 0);
  double best = -kInfinity;
  while (true) {
    bool ok = true;
    for (const Row& row : mip.lp.rows) {
      double act = 0;
      for (size_t k = 0; k < row.indices.size(); ++k) act += row.values[k] * x[row.indices[k]];
      if (row.relation != Relation::kGreaterEqual) ok = ok && act <= row.rhs + 1e-9;
      if (row.relation != Relation::kLessEqual) ok = ok && act >= row.rhs - 1e-9;
    }
    if (ok) {
      double obj = 0;
      for (int j = 0; j < n; ++j) obj += mip.lp.objective[j] * x[j];
      best = std::max(best, obj);
    }
    int j = 0;
    while (j < n && x[j] == box) x[j++] = 0;
    if (j == n) break;
    ++x[j];
  }
  return best;
}

TEST(SolveMipTest, RandomProgramsMatchEnumeration) {
  std::mt19937 rng(2026);
  std::uniform_int_distribution<int> coef(-3, 6);
  std::uniform_int_distribution<int> obj(-2, 9);
  for (int trial = 0; trial < 60; ++trial) {
    MixedIntegerProgram mip;
    const int n = 4;
    const int box = 3;
    for (int j = 0; j < n; ++j) mip.lp.AddVariable(obj(rng), 0.0, box);
    for (int i = 0; i < 3; ++i) {
      std::vector<int> idx = {0, 1, 2, 3};
      std::vector<double> val;
      for (int j = 0; j < n; ++j) val.push_back(coef(rng));
      mip.lp.AddRow(idx, val, i == 2 ? Relation::kGreaterEqual : Relation::kLessEqual,
                    i == 2 ? -2.0 : 4.0 + trial % 5);
    }
    mip.integer_variables = {0, 1, 2, 3};
    const double oracle = BruteForce(mip, box);
    const MipResult r = SolveMip(mip);
    if (std::isinf(oracle)) {
      EXPECT_EQ(r.status, MipStatus::kInfeasible) << "trial " << trial;
      continue;
    }
    ASSERT_EQ(r.status, MipStatus::kOptimal) << "trial " << trial;
    EXPECT_NEAR(r.objective, oracle, 1e-6) << "trial " << trial;
    for (int j = 0; j < n; ++j) EXPECT_EQ(r.primal[j], std::round(r.primal[j]));
  }
}

TEST(SolveMipTest, MixedContinuousVariablesStayFractional) {
  // max x + y, x integer, y continuous, x + y <= 2.5, x <= 1.7.
  MixedIntegerProgram mip;
  mip.lp.AddVariable(1.0);
  mip.lp.AddVariable(1.0);
  mip.lp.AddRow(std::vector<int>{0, 1}, std::vector<double>{1, 1}, Relation::kLessEqual, 2.5);
  mip.lp.AddRow(std::vector<int>{0}, std::vector<double>{1}, Relation::kLessEqual, 1.7);
  mip.lp.AddVariable(0.0);
  mip.integer_variables = {0};
  const MipResult r = SolveMip(mip);
  ASSERT_EQ(r.status, MipStatus::kOptimal);
  EXPECT_NEAR(r.objective, 2.5, 1e-9);
  EXPECT_LE(r.primal[0], 1.0 + 1e-9);
}

// A knapsack with many equivalent items forces a wide tree; the node limit
// must stop the search and still report the incumbent and bound.
TEST(SolveMipTest, NodeLimitKeepsIncumbentAndBound) {
  MixedIntegerProgram mip;
  std::vector<int> idx;
  std::vector<double> w;
  for (int j = 0; j < 24; ++j) {
    mip.lp.AddVariable(10.0 + (j % 5), 0.0, 1.0);
    idx.push_back(j);
    w.push_back(2.0 * (7 + j % 4));
  }
  mip.lp.AddRow(idx, w, Relation::kLessEqual, 101);
  mip.integer_variables = idx;
  MipOptions options;
  options.node_limit = 5;
  const MipResult r = SolveMip(mip, options);
  if (r.status == MipStatus::kOptimal) GTEST_SKIP() << "solved within the node limit";
  EXPECT_TRUE(r.status == MipStatus::kLimitWithIncumbent ||
              r.status == MipStatus::kLimitNoIncumbent);
  EXPECT_FALSE(r.proven_optimal);
  EXPECT_LE(r.nodes, 6);
  if (r.has_incumbent) EXPECT_LE(r.objective, r.bound + 1e-9);
}

TEST(SolveMipTest, StatusNames) {
  EXPECT_STREQ(ToString(MipStatus::kOptimal), "optimal");
  EXPECT_STREQ(ToString(MipStatus::kLimitNoIncumbent), "limit_no_incumbent");
}

}  // namespace
}  // namespace sevplan::lp
