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

#ifndef BWD_ROBUST_H_
#define BWD_ROBUST_H_

// Robustness of the ranking over the set of optimal models (xi <= xi* + 1e-9):
// necessary preference, extreme ranks and the imprecision index.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bwd/model.h"

namespace bwd {

inline constexpr double kStrictnessTolerance = 1e-7;
inline constexpr double kRankEpsilon = 1e-6;

struct NecessaryRelation {
  std::size_t size = 0;
  // delta[p][q] = max V(p) - V(q) over the optimal models; 0 on the diagonal.
  std::vector<std::vector<double>> delta;
  // (q, p): q is necessarily preferred to p. Sorted.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;

  bool prefers(std::size_t q, std::size_t p) const {
    return delta[p][q] < -kStrictnessTolerance;
  }
};

NecessaryRelation necessary_relation(const PerformanceMatrix& matrix,
                                     const BreakpointGrid& grid,
                                     const ComparisonSet& comparisons, double xi_star);

// Throws InternalError unless the relation is irreflexive, asymmetric and
// transitive.
void validate_order(const NecessaryRelation& relation);

struct RankRange {
  int best_rank = 1;
  int worst_rank = 1;
  int outranking_count = 0;  // max #alternatives with V(h) <= V(i) + eps
  int dominance_count = 0;   // max #alternatives with V(h) >= V(i) - eps
};

// One pair of MILPs per alternative. When a necessary relation for the same
// optimal set is given, its deltas fix or tighten the indicator constraints.
std::vector<RankRange> extreme_ranks(const PerformanceMatrix& matrix,
                                     const BreakpointGrid& grid,
                                     const ComparisonSet& comparisons, double xi_star,
                                     const NecessaryRelation* relation = nullptr);

// U = (1/m) sum (worst - best) / (m - 1). Throws ValidationError for m < 2.
double imprecision_index(const std::vector<RankRange>& ranges);

// Transitive reduction of the necessary relation, edges (q, p) sorted.
std::vector<std::pair<std::size_t, std::size_t>> hasse(const NecessaryRelation& relation);

std::string hasse_dot(const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                      const std::vector<std::string>& ids);
std::string rank_ranges_csv(const std::vector<RankRange>& ranges,
                            const std::vector<std::string>& ids);

struct RobustnessReport {
  std::optional<NecessaryRelation> relation;
  std::vector<RankRange> ranges;
  std::optional<double> imprecision;  // absent for m = 1
  std::vector<std::pair<std::size_t, std::size_t>> hasse_edges;
};

RobustnessReport analyze_robustness(const PerformanceMatrix& matrix,
                                    const BreakpointGrid& grid,
                                    const ComparisonSet& comparisons, double xi_star,
                                    bool with_necessary = true);

}  // namespace bwd

#endif  // BWD_ROBUST_H_
