// Copyright 2026 The BWD Authors
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

#include "bwd/value_program.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "bwd/error.h"

namespace bwd {

opt::LinearTerms combine(const opt::LinearTerms& x, double a,
                         const opt::LinearTerms& y, double b) {
  std::map<int, double> acc;
  for (const auto& [v, c] : x) acc[v] += a * c;
  for (const auto& [v, c] : y) acc[v] += b * c;
  opt::LinearTerms out;
  for (const auto& [v, c] : acc) {
    if (c != 0.0) out.emplace_back(v, c);
  }
  return out;
}

ValueProgram::ValueProgram(const PerformanceMatrix& matrix,
                           const BreakpointGrid& grid)
    : matrix_(matrix), grid_(grid) {
  if (grid_.num_criteria() != matrix_.num_criteria()) {
    throw ValidationError("grid and matrix disagree on the number of criteria");
  }
  const std::size_t n = matrix_.num_criteria();
  vars_.resize(n);
  opt::LinearTerms weights;
  for (std::size_t j = 0; j < n; ++j) {
    const int s = grid_.segments(j);
    for (int k = 1; k <= s; ++k) {
      vars_[j].push_back(lp_.add_variable(
          "v_" + std::to_string(j) + "_" + std::to_string(k), 0.0, opt::kInfinity));
    }
    // Monotonicity; v_j^1 >= 0 = v_j^0 is the variable bound.
    for (int k = 1; k < s; ++k) {
      lp_.add_constraint({{vars_[j][k - 1], 1.0}, {vars_[j][k], -1.0}},
                         opt::Relation::kLessEqual, 0.0,
                         "mono_" + std::to_string(j) + "_" + std::to_string(k));
    }
    weights.emplace_back(vars_[j].back(), 1.0);
  }
  lp_.add_constraint(std::move(weights), opt::Relation::kEqual, 1.0, "normalize");

  value_terms_.resize(matrix_.num_alternatives());
  for (std::size_t i = 0; i < matrix_.num_alternatives(); ++i) {
    opt::LinearTerms terms;
    for (std::size_t j = 0; j < n; ++j) {
      const double x = matrix_.oriented_level(i, j);
      const int k = grid_.locate(j, x);
      const auto& b = grid_.breakpoints(j);
      const double t = std::clamp((x - b[k]) / (b[k + 1] - b[k]), 0.0, 1.0);
      // Levels on a breakpoint use that breakpoint's variable directly.
      const double snap = 1e-9;
      if (t <= snap) {
        if (k >= 1) terms.emplace_back(vars_[j][k - 1], 1.0);
      } else if (t >= 1.0 - snap) {
        terms.emplace_back(vars_[j][k], 1.0);
      } else {
        if (k >= 1) terms.emplace_back(vars_[j][k - 1], 1.0 - t);
        terms.emplace_back(vars_[j][k], t);
      }
    }
    value_terms_[i] = std::move(terms);
  }
}

ValueProgram ValueProgram::optimal_set(const PerformanceMatrix& matrix,
                                       const BreakpointGrid& grid,
                                       const ComparisonSet& comparisons,
                                       double xi_star) {
  ValueProgram p(matrix, grid);
  p.add_judgments(comparisons, xi_star + kOptimalSetSlack);
  return p;
}

opt::LinearTerms ValueProgram::difference(std::size_t p, std::size_t q) const {
  return combine(value_terms_[p], 1.0, value_terms_[q], -1.0);
}

int ValueProgram::add_judgments(const ComparisonSet& comparisons) {
  const int xi = lp_.add_variable("xi", 0.0, opt::kInfinity);
  add_judgment_rows(comparisons, xi, 0.0);
  return xi;
}

void ValueProgram::add_judgments(const ComparisonSet& comparisons, double xi_bound) {
  add_judgment_rows(comparisons, -1, xi_bound);
}

void ValueProgram::add_judgment_rows(const ComparisonSet& comparisons, int xi_var,
                                     double xi_bound) {
  comparisons.check_indices(matrix_.num_alternatives());
  // For a judgment on the ratio V(num) / V(den) in [lo, hi]:
  //   V(num) - hi V(den) - xi <= 0   and   V(num) - lo V(den) + xi >= 0.
  auto add_pair = [&](std::size_t num, std::size_t den, const Judgment& a,
                      const std::string& tag) {
    opt::LinearTerms upper = combine(value_terms_[num], 1.0, value_terms_[den], -a.upper);
    opt::LinearTerms lower = combine(value_terms_[num], 1.0, value_terms_[den], -a.lower);
    if (xi_var >= 0) {
      upper.emplace_back(xi_var, -1.0);
      lower.emplace_back(xi_var, 1.0);
      lp_.add_constraint(std::move(upper), opt::Relation::kLessEqual, 0.0, tag + "_hi");
      lp_.add_constraint(std::move(lower), opt::Relation::kGreaterEqual, 0.0, tag + "_lo");
    } else {
      lp_.add_constraint(std::move(upper), opt::Relation::kLessEqual, xi_bound, tag + "_hi");
      lp_.add_constraint(std::move(lower), opt::Relation::kGreaterEqual, -xi_bound,
                         tag + "_lo");
    }
  };
  const auto& ref = comparisons.reference();
  for (std::size_t p = 0; p < ref.size(); ++p) {
    if (p != comparisons.best_position()) {
      add_pair(comparisons.best(), ref[p], comparisons.bo()[p], "bo_" + std::to_string(p));
    }
  }
  for (std::size_t p = 0; p < ref.size(); ++p) {
    if (p != comparisons.worst_position()) {
      add_pair(ref[p], comparisons.worst(), comparisons.ow()[p], "ow_" + std::to_string(p));
    }
  }
}

PiecewiseValueModel ValueProgram::extract(const std::vector<double>& solution) const {
  const std::size_t n = matrix_.num_criteria();
  std::vector<std::vector<double>> values(n);
  double total = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    values[j].push_back(0.0);
    for (int var : vars_[j]) {
      const double v = std::max(solution[var], values[j].back());
      values[j].push_back(std::max(v, 0.0));
    }
    total += values[j].back();
  }
  if (std::abs(total - 1.0) > 1e-7) {
    throw InternalError("value model from the solver is not normalized");
  }
  for (auto& row : values) {
    for (double& v : row) v /= total;
  }
  return PiecewiseValueModel(grid_, std::move(values));
}

}  // namespace bwd
