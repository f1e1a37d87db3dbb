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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <memory>
#include <queue>
#include <utility>
#include <vector>

#include "sevplan/lp.h"

namespace sevplan::lp {
namespace {

struct BoundChange {
  int column;
  double lower;
  double upper;
};

// An open node of the search tree. `bound` is the parent relaxation value
// until the node is evaluated.
struct SearchNode {
  std::int64_t id = 0;
  int depth = 0;
  double bound = kInfinity;
  std::vector<BoundChange> changes;
  std::shared_ptr<const Basis> basis;
};

struct NodeOrder {
  bool operator()(const SearchNode& a, const SearchNode& b) const {
    if (a.bound != b.bound) return a.bound < b.bound;
    return a.id > b.id;
  }
};

double Fractionality(double v) { return std::abs(v - std::round(v)); }

}  // namespace

const char* ToString(MipStatus status) {
  switch (status) {
    case MipStatus::kOptimal:
      return "optimal";
    case MipStatus::kInfeasible:
      return "infeasible";
    case MipStatus::kUnbounded:
      return "unbounded";
    case MipStatus::kLimitWithIncumbent:
      return "limit_with_incumbent";
    case MipStatus::kLimitNoIncumbent:
      return "limit_no_incumbent";
  }
  return "unknown";
}

MipResult SolveMip(const MixedIntegerProgram& mip, const MipOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
  };
  const LinearProgram& lp = mip.lp;
  for (int j : mip.integer_variables) {
    if (j < 0 || j >= lp.num_variables()) {
      throw std::invalid_argument("integer variable index out of range");
    }
  }
  const double int_tol = options.simplex.tolerances.integrality;

  SimplexSolver solver(lp, options.simplex);
  std::vector<double> root_lower = lp.lower;
  std::vector<double> root_upper = lp.upper;
  // Integer columns get integral root bounds.
  for (int j : mip.integer_variables) {
    if (std::isfinite(root_lower[j])) root_lower[j] = std::ceil(root_lower[j] - int_tol);
    if (std::isfinite(root_upper[j])) root_upper[j] = std::floor(root_upper[j] + int_tol);
    solver.SetVariableBounds(j, root_lower[j], root_upper[j]);
  }

  MipResult result;
  result.root = solver.Solve();
  result.nodes = 1;
  if (result.root.status == LpStatus::kInfeasible) {
    result.status = MipStatus::kInfeasible;
    result.bound = -kInfinity;
    result.seconds = elapsed();
    return result;
  }
  if (result.root.status == LpStatus::kUnbounded) {
    result.status = MipStatus::kUnbounded;
    result.bound = kInfinity;
    result.seconds = elapsed();
    return result;
  }
  if (result.root.status != LpStatus::kOptimal) {
    result.status = MipStatus::kLimitNoIncumbent;
    result.bound = kInfinity;
    result.seconds = elapsed();
    return result;
  }

  double incumbent = -kInfinity;
  const auto prune_threshold = [&] {
    return incumbent + 1e-7 * (1.0 + std::abs(incumbent));
  };
  const auto pick_branch = [&](const std::vector<double>& x) {
    int best = -1;
    double best_frac = int_tol;
    for (int j : mip.integer_variables) {
      const double f = Fractionality(x[j]);
      if (f > best_frac + 1e-12) {
        best_frac = f;
        best = j;
      }
    }
    return best;
  };

  std::vector<SearchNode> dive;
  std::priority_queue<SearchNode, std::vector<SearchNode>, NodeOrder> frontier;
  std::vector<int> touched;
  std::int64_t next_id = 1;
  bool limit_hit = false;

  // Either records an incumbent or returns the two children of a node whose
  // relaxation is `sol`.
  const auto expand = [&](const SearchNode& node, const LpSolution& sol,
                          std::vector<SearchNode>& children) {
    const int j = pick_branch(sol.primal);
    if (j < 0) {
      if (sol.objective > incumbent) {
        incumbent = sol.objective;
        result.has_incumbent = true;
        result.objective = sol.objective;
        result.primal = sol.primal;
        for (int k : mip.integer_variables) {
          result.primal[k] = std::round(result.primal[k]);
        }
        result.incumbent_lp = sol;
      }
      return;
    }
    const double v = sol.primal[j];
    auto basis = std::make_shared<const Basis>(sol.basis);
    double lo = root_lower[j];
    double hi = root_upper[j];
    for (const BoundChange& c : node.changes) {
      if (c.column == j) {
        lo = c.lower;
        hi = c.upper;
      }
    }
    SearchNode down{next_id++, node.depth + 1, sol.objective, node.changes, basis};
    down.changes.push_back({j, lo, std::floor(v)});
    SearchNode up{next_id++, node.depth + 1, sol.objective, node.changes, basis};
    up.changes.push_back({j, std::ceil(v), hi});
    // The child on the nearer rounding side is explored first when diving.
    if (v - std::floor(v) >= 0.5) {
      children.push_back(std::move(down));
      children.push_back(std::move(up));
    } else {
      children.push_back(std::move(up));
      children.push_back(std::move(down));
    }
  };

  {
    SearchNode root_node;
    std::vector<SearchNode> children;
    expand(root_node, result.root, children);
    for (auto& c : children) dive.push_back(std::move(c));
  }

  const auto open_bound = [&] {
    double b = -kInfinity;
    for (const SearchNode& n : dive) b = std::max(b, n.bound);
    if (!frontier.empty()) b = std::max(b, frontier.top().bound);
    return b;
  };

  while (!dive.empty() || !frontier.empty()) {
    if (result.has_incumbent && !dive.empty()) {
      for (auto& n : dive) frontier.push(std::move(n));
      dive.clear();
    }
    const double global = std::max(open_bound(), incumbent);
    if (result.has_incumbent &&
        global - incumbent <= options.relative_gap * std::max(1.0, std::abs(incumbent))) {
      break;
    }
    if ((options.time_limit_seconds > 0 && elapsed() > options.time_limit_seconds) ||
        (options.node_limit > 0 && result.nodes >= options.node_limit)) {
      limit_hit = true;
      break;
    }

    SearchNode node;
    if (!dive.empty()) {
      node = std::move(dive.back());
      dive.pop_back();
    } else {
      node = frontier.top();
      frontier.pop();
    }
    if (result.has_incumbent && node.bound <= prune_threshold()) continue;

    for (int j : touched) solver.SetVariableBounds(j, root_lower[j], root_upper[j]);
    touched.clear();
    for (const BoundChange& c : node.changes) {
      solver.SetVariableBounds(c.column, c.lower, c.upper);
      touched.push_back(c.column);
    }
    if (node.basis) solver.SetBasis(*node.basis);
    const LpSolution sol = solver.Solve();
    ++result.nodes;
    if (sol.status == LpStatus::kInfeasible) continue;
    if (sol.status != LpStatus::kOptimal) {
      // Treat as unresolved: keep its parent bound so the reported bound stays valid.
      limit_hit = true;
      frontier.push(node);
      break;
    }
    if (result.has_incumbent && sol.objective <= prune_threshold()) continue;

    std::vector<SearchNode> children;
    expand(node, sol, children);
    for (auto& c : children) {
      if (result.has_incumbent) {
        frontier.push(std::move(c));
      } else {
        dive.push_back(std::move(c));
      }
    }
  }

  const double remaining = open_bound();
  result.seconds = elapsed();
  if (limit_hit) {
    result.bound = std::max(remaining, incumbent);
    result.status = result.has_incumbent ? MipStatus::kLimitWithIncumbent
                                         : MipStatus::kLimitNoIncumbent;
    if (result.has_incumbent &&
        result.bound - incumbent <=
            options.relative_gap * std::max(1.0, std::abs(incumbent))) {
      result.status = MipStatus::kOptimal;
      result.proven_optimal = true;
    }
    return result;
  }
  if (!result.has_incumbent) {
    result.status = MipStatus::kInfeasible;
    result.bound = -kInfinity;
    return result;
  }
  result.bound = std::max(remaining, incumbent);
  result.status = MipStatus::kOptimal;
  result.proven_optimal = true;
  return result;
}

}  // namespace sevplan::lp
