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

#ifndef BWD_REFSET_H_
#define BWD_REFSET_H_

// Reference-set selection: the smallest set of mutually non-dominated
// alternatives that covers every segment of every criterion at least b times.

#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bwd/model.h"

namespace bwd {

// covers(i, j, k): alternative i's level on criterion j falls in segment k.
class CoverageArray {
 public:
  CoverageArray() = default;
  // segment_of[i][j] is the covered segment index, in [0, segments).
  CoverageArray(std::vector<std::vector<int>> segment_of, int segments);

  std::size_t num_alternatives() const { return segment_of_.size(); }
  std::size_t num_criteria() const {
    return segment_of_.empty() ? 0 : segment_of_.front().size();
  }
  int segments() const { return segments_; }
  bool covers(std::size_t i, std::size_t j, int k) const {
    return segment_of_[i][j] == k;
  }
  int segment_of(std::size_t i, std::size_t j) const { return segment_of_[i][j]; }

  // Column sums over a selection: counts[j][k] = sum_{i in selection} a_ijk.
  std::vector<std::vector<int>> counts(const std::vector<std::size_t>& selection) const;

 private:
  std::vector<std::vector<int>> segment_of_;
  int segments_ = 1;
};

// Throws ValidationError unless every criterion has the same segment count.
CoverageArray coverage_array(const PerformanceMatrix& matrix,
                             const BreakpointGrid& grid);

using DominancePairs = std::vector<std::pair<std::size_t, std::size_t>>;

// All pairs (i, i') with i < i' where one row Pareto-dominates the other.
DominancePairs dominance_pairs(const PerformanceMatrix& matrix);

struct UncoverableCell {
  std::size_t criterion = 0;
  int segment = 0;
  // Alternatives that could cover the cell (not forbidden).
  std::size_t candidates = 0;
  // Largest dominance-free subset of those candidates.
  std::size_t max_free_cover = 0;
};

struct ReferenceSelection {
  bool feasible = false;
  std::vector<std::size_t> selected;  // ascending
  // Populated when infeasible: cells that cannot be covered b times by any
  // dominance-free selection on their own.
  std::vector<UncoverableCell> uncoverable;
  // Infeasible although every cell is coverable in isolation.
  bool joint_conflict = false;
};

// Minimum-cardinality selection; among optimal selections, the
// lexicographically smallest sorted index set.
ReferenceSelection select_reference_set(const CoverageArray& coverage,
                                        const DominancePairs& dominance, int b,
                                        const std::set<std::size_t>& forbidden = {});

struct AugmentedReference {
  std::vector<std::size_t> reference;  // selection first, then additions
  DominancePairs dominated;            // dominance pairs inside the result
  std::vector<std::string> warnings;
};

// Appends analyst-chosen alternatives to a selection. Dominance between
// members is reported as a warning, not an error.
AugmentedReference augment_reference_set(const PerformanceMatrix& matrix,
                                         const std::vector<std::size_t>& selected,
                                         const std::vector<std::size_t>& additions);

}  // namespace bwd

#endif  // BWD_REFSET_H_
