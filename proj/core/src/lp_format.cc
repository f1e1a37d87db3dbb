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
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>
#include <string>

#include "sevplan/lp.h"

namespace sevplan::lp {
namespace {

std::string ColumnName(const LinearProgram& lp, int j) {
  if (j < static_cast<int>(lp.variable_names.size()) &&
      !lp.variable_names[j].empty()) {
    return lp.variable_names[j];
  }
  return "c" + std::to_string(j);
}

std::string Number(double v) {
  std::ostringstream s;
  s << std::setprecision(15) << v;
  return s.str();
}

// Writes " + 3 x" / " - 2 y" terms, wrapping long lines.
void WriteTerms(std::ostream& out, const LinearProgram& lp,
                const std::vector<int>& idx, const std::vector<double>& val) {
  int on_line = 0;
  bool first = true;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    const double v = val[k];
    if (v == 0.0) continue;
    out << (v < 0 ? " - " : (first ? " " : " + "));
    if (std::abs(v) != 1.0) out << Number(std::abs(v)) << ' ';
    out << ColumnName(lp, idx[k]);
    first = false;
    if (++on_line == 8) {
      out << "\n   ";
      on_line = 0;
    }
  }
  if (first) out << " 0 " << (lp.num_variables() > 0 ? ColumnName(lp, 0) : "");
}

}  // namespace

void WriteLpFormat(const MixedIntegerProgram& mip, std::ostream& out) {
  const LinearProgram& lp = mip.lp;
  out << "\\ sevplan export\n";
  out << "Maximize\n obj:";
  std::vector<int> idx;
  std::vector<double> val;
  for (int j = 0; j < lp.num_variables(); ++j) {
    if (lp.objective[j] != 0.0) {
      idx.push_back(j);
      val.push_back(lp.objective[j]);
    }
  }
  WriteTerms(out, lp, idx, val);
  if (lp.objective_offset != 0.0) {
    out << (lp.objective_offset < 0 ? " - " : " + ")
        << Number(std::abs(lp.objective_offset));
  }
  out << "\nSubject To\n";
  for (int i = 0; i < lp.num_rows(); ++i) {
    const Row& row = lp.rows[i];
    out << ' ' << (row.name.empty() ? "r" + std::to_string(i) : row.name) << ':';
    WriteTerms(out, lp, row.indices, row.values);
    switch (row.relation) {
      case Relation::kLessEqual:
        out << " <= ";
        break;
      case Relation::kGreaterEqual:
        out << " >= ";
        break;
      case Relation::kEqual:
        out << " = ";
        break;
    }
    out << Number(row.rhs) << '\n';
  }
  out << "Bounds\n";
  for (int j = 0; j < lp.num_variables(); ++j) {
    const double lo = lp.lower[j];
    const double hi = lp.upper[j];
    const std::string name = ColumnName(lp, j);
    if (lo == 0.0 && !std::isfinite(hi)) continue;
    if (!std::isfinite(lo) && !std::isfinite(hi)) {
      out << ' ' << name << " free\n";
    } else if (lo == hi) {
      out << ' ' << name << " = " << Number(lo) << '\n';
    } else {
      out << ' ' << (std::isfinite(lo) ? Number(lo) : "-inf") << " <= " << name
          << " <= " << (std::isfinite(hi) ? Number(hi) : "+inf") << '\n';
    }
  }
  if (!mip.integer_variables.empty()) {
    out << "General\n";
    const std::set<int> ints(mip.integer_variables.begin(),
                             mip.integer_variables.end());
    int on_line = 0;
    for (int j : ints) {
      out << ' ' << ColumnName(lp, j);
      if (++on_line == 8) {
        out << '\n';
        on_line = 0;
      }
    }
    out << '\n';
  }
  out << "End\n";
}

}  // namespace sevplan::lp
