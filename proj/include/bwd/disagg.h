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

#ifndef BWD_DISAGG_H_
#define BWD_DISAGG_H_

// Fitting a piecewise-linear additive value model to best/worst judgments by
// minimizing the largest deviation xi from the ideal ratio conditions
//   V(x_B) = a_Bi V(x_i)   and   V(x_i) = a_iW V(x_W),
// with interval judgments relaxing each equality to a ratio band.

#include <cstddef>
#include <vector>

#include "bwd/model.h"
#include "bwd/optimizer.h"

namespace bwd {

enum class ModelKind { kBwd, kIntervalBwd };
const char* to_string(ModelKind kind);

struct DisaggregationResult {
  ModelKind kind = ModelKind::kBwd;
  double xi_star = 0.0;
  PiecewiseValueModel representative;
  std::vector<double> values;  // global value of every alternative
  // Alternatives by decreasing value; entries closer than 1e-9 share a group.
  std::vector<std::vector<std::size_t>> ranking;
};

// The deviation-minimizing program: breakpoint variables, xi (returned in
// xi_var) and the judgment constraints, objective min xi.
opt::LinearProgram deviation_program(const PerformanceMatrix& matrix,
                                     const BreakpointGrid& grid,
                                     const ComparisonSet& comparisons, int* xi_var = nullptr);

// Optimal deviation only. Real judgments are treated as degenerate intervals,
// so this is xi* for real sets and xi*_I for interval sets.
double optimal_deviation(const PerformanceMatrix& matrix, const BreakpointGrid& grid,
                         const ComparisonSet& comparisons);

// Real-valued judgments; throws ValidationError for interval sets.
DisaggregationResult solve_bwd(const PerformanceMatrix& matrix,
                               const BreakpointGrid& grid,
                               const ComparisonSet& comparisons);

// Interval judgments (degenerate intervals and plain reals accepted).
DisaggregationResult solve_ibwd(const PerformanceMatrix& matrix,
                                const BreakpointGrid& grid,
                                const ComparisonSet& comparisons);

// Picks solve_ibwd when any judgment was entered as an interval.
DisaggregationResult solve(const PerformanceMatrix& matrix, const BreakpointGrid& grid,
                           const ComparisonSet& comparisons);

// Average of the n models maximizing each weight v_j(upper_j) over the set of
// models within xi_star + 1e-9 of the judgments.
PiecewiseValueModel representative_model(const PerformanceMatrix& matrix,
                                         const BreakpointGrid& grid,
                                         const ComparisonSet& comparisons,
                                         double xi_star);

// Largest violation of the judgment conditions by a given model, i.e. the
// smallest xi the model is feasible for.
double model_deviation(const PiecewiseValueModel& model,
                       const PerformanceMatrix& matrix,
                       const ComparisonSet& comparisons);

std::vector<std::vector<std::size_t>> rank_groups(const std::vector<double>& values);

// Rank of each alternative under one model: 1 + number of alternatives with a
// value larger by more than 1e-9.
std::vector<int> realized_ranks(const std::vector<double>& values);

}  // namespace bwd

#endif  // BWD_DISAGG_H_
