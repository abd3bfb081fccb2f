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

#ifndef BWD_VALUE_PROGRAM_H_
#define BWD_VALUE_PROGRAM_H_

#include <cstddef>
#include <vector>

#include "bwd/model.h"
#include "bwd/optimizer.h"

namespace bwd {

// Slack added to xi* when restricting to the set of optimal models.
inline constexpr double kOptimalSetSlack = 1e-9;

// A linear program whose decision variables are the breakpoint values
// v_j(x_j^k), k >= 1 (v_j(x_j^0) = 0 is substituted out). It carries the
// monotonicity and normalization constraints; the global value of every
// alternative is a fixed linear form in the breakpoint variables, built from
// the interpolation coefficients of its levels.
class ValueProgram {
 public:
  ValueProgram(const PerformanceMatrix& matrix, const BreakpointGrid& grid);

  // Set of models within xi_star (+ kOptimalSetSlack) of the judgments.
  static ValueProgram optimal_set(const PerformanceMatrix& matrix,
                                  const BreakpointGrid& grid,
                                  const ComparisonSet& comparisons,
                                  double xi_star);

  const PerformanceMatrix& matrix() const { return matrix_; }
  const BreakpointGrid& grid() const { return grid_; }
  std::size_t num_alternatives() const { return matrix_.num_alternatives(); }

  opt::LinearProgram& lp() { return lp_; }
  const opt::LinearProgram& lp() const { return lp_; }

  int breakpoint_var(std::size_t j, int k) const { return vars_[j][k - 1]; }
  const opt::LinearTerms& value_terms(std::size_t i) const { return value_terms_[i]; }
  // V(x_p) - V(x_q).
  opt::LinearTerms difference(std::size_t p, std::size_t q) const;

  // Adds the deviation variable xi >= 0 and the judgment constraints
  //   -xi + a^- V(x_j) <= V(x_i) <= a^+ V(x_j) + xi
  // for both vectors. Real judgments are degenerate intervals.
  int add_judgments(const ComparisonSet& comparisons);
  // Same constraints with xi replaced by a constant bound.
  void add_judgments(const ComparisonSet& comparisons, double xi_bound);

  // Reads a model from a solution; round-off below 1e-9 is cleaned so that
  // the model invariants hold exactly.
  PiecewiseValueModel extract(const std::vector<double>& solution) const;

 private:
  void add_judgment_rows(const ComparisonSet& comparisons, int xi_var,
                         double xi_bound);

  PerformanceMatrix matrix_;
  BreakpointGrid grid_;
  opt::LinearProgram lp_;
  std::vector<std::vector<int>> vars_;
  std::vector<opt::LinearTerms> value_terms_;
};

// a * x + b * y for sparse linear forms.
opt::LinearTerms combine(const opt::LinearTerms& x, double a,
                         const opt::LinearTerms& y, double b);

}  // namespace bwd

#endif  // BWD_VALUE_PROGRAM_H_
