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

#include "bwd/disagg.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "bwd/error.h"
#include "bwd/optimizer.h"
#include "bwd/parallel.h"
#include "bwd/value_program.h"

namespace bwd {

const char* to_string(ModelKind kind) {
  return kind == ModelKind::kBwd ? "bwd" : "ibwd";
}

opt::LinearProgram deviation_program(const PerformanceMatrix& matrix,
                                     const BreakpointGrid& grid,
                                     const ComparisonSet& comparisons, int* xi_var) {
  ValueProgram program(matrix, grid);
  const int xi = program.add_judgments(comparisons);
  program.lp().set_objective(opt::Sense::kMinimize, {{xi, 1.0}});
  if (xi_var != nullptr) *xi_var = xi;
  return program.lp();
}

double optimal_deviation(const PerformanceMatrix& matrix, const BreakpointGrid& grid,
                         const ComparisonSet& comparisons) {
  int xi = 0;
  const opt::Solution sol = opt::solve_lp(deviation_program(matrix, grid, comparisons, &xi));
  // xi is unbounded above and every other constraint is satisfiable, so the
  // program always has an optimum.
  if (!sol.optimal()) {
    throw InternalError(std::string("deviation program ended ") + opt::to_string(sol.status));
  }
  return std::max(0.0, sol.values[xi]);
}

PiecewiseValueModel representative_model(const PerformanceMatrix& matrix,
                                         const BreakpointGrid& grid,
                                         const ComparisonSet& comparisons,
                                         double xi_star) {
  const ValueProgram base = ValueProgram::optimal_set(matrix, grid, comparisons, xi_star);
  const std::size_t n = matrix.num_criteria();
  std::vector<std::vector<double>> solutions(n);
  parallel_for(n, [&](std::size_t j) {
    ValueProgram program = base;
    program.lp().set_objective(opt::Sense::kMaximize,
                               {{program.breakpoint_var(j, grid.segments(j)), 1.0}});
    const opt::Solution sol = opt::solve_lp(program.lp());
    if (!sol.optimal()) {
      throw InternalError("weight-maximizing program has no optimum at xi*");
    }
    solutions[j] = sol.values;
  });
  std::vector<double> mean(base.lp().num_variables(), 0.0);
  for (const auto& s : solutions) {
    for (std::size_t v = 0; v < mean.size(); ++v) mean[v] += s[v] / static_cast<double>(n);
  }
  return base.extract(mean);
}

double model_deviation(const PiecewiseValueModel& model,
                       const PerformanceMatrix& matrix,
                       const ComparisonSet& comparisons) {
  const std::vector<double> v = model.evaluate_all(matrix);
  const auto& ref = comparisons.reference();
  double worst = 0.0;
  auto check = [&](double num, double den, const Judgment& a) {
    worst = std::max(worst, num - a.upper * den);
    worst = std::max(worst, a.lower * den - num);
  };
  for (std::size_t p = 0; p < ref.size(); ++p) {
    if (p != comparisons.best_position()) {
      check(v[comparisons.best()], v[ref[p]], comparisons.bo()[p]);
    }
    if (p != comparisons.worst_position()) {
      check(v[ref[p]], v[comparisons.worst()], comparisons.ow()[p]);
    }
  }
  return worst;
}

std::vector<std::vector<std::size_t>> rank_groups(const std::vector<double>& values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  std::vector<std::vector<std::size_t>> groups;
  double head = 0.0;
  for (std::size_t i : order) {
    if (groups.empty() || values[i] < head - kValueTolerance) {
      groups.push_back({i});
      head = values[i];
    } else {
      groups.back().push_back(i);
    }
  }
  for (auto& g : groups) std::sort(g.begin(), g.end());
  return groups;
}

std::vector<int> realized_ranks(const std::vector<double>& values) {
  std::vector<int> ranks(values.size(), 1);
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t h = 0; h < values.size(); ++h) {
      if (values[h] > values[i] + kValueTolerance) ++ranks[i];
    }
  }
  return ranks;
}

namespace {

DisaggregationResult fit(const PerformanceMatrix& matrix, const BreakpointGrid& grid,
                         const ComparisonSet& comparisons, ModelKind kind) {
  comparisons.check_indices(matrix.num_alternatives());
  DisaggregationResult r;
  r.kind = kind;
  r.xi_star = optimal_deviation(matrix, grid, comparisons);
  r.representative = representative_model(matrix, grid, comparisons, r.xi_star);
  r.values = r.representative.evaluate_all(matrix);
  r.ranking = rank_groups(r.values);
  return r;
}

}  // namespace

DisaggregationResult solve_bwd(const PerformanceMatrix& matrix,
                               const BreakpointGrid& grid,
                               const ComparisonSet& comparisons) {
  if (!comparisons.real_valued()) {
    throw ValidationError("BWD needs real-valued judgments; use the interval model");
  }
  return fit(matrix, grid, comparisons, ModelKind::kBwd);
}

DisaggregationResult solve_ibwd(const PerformanceMatrix& matrix,
                                const BreakpointGrid& grid,
                                const ComparisonSet& comparisons) {
  return fit(matrix, grid, comparisons, ModelKind::kIntervalBwd);
}

DisaggregationResult solve(const PerformanceMatrix& matrix, const BreakpointGrid& grid,
                           const ComparisonSet& comparisons) {
  return comparisons.real_valued() ? solve_bwd(matrix, grid, comparisons)
                                   : solve_ibwd(matrix, grid, comparisons);
}

}  // namespace bwd
