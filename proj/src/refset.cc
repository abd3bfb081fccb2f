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

#include "bwd/refset.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "bwd/error.h"
#include "bwd/optimizer.h"

namespace bwd {

CoverageArray::CoverageArray(std::vector<std::vector<int>> segment_of, int segments)
    : segment_of_(std::move(segment_of)), segments_(segments) {
  if (segments_ < 1) throw ValidationError("coverage needs at least one segment");
  for (const auto& row : segment_of_) {
    if (row.size() != num_criteria()) {
      throw ValidationError("coverage rows differ in length");
    }
    for (int k : row) {
      if (k < 0 || k >= segments_) {
        throw ValidationError("coverage segment index out of range");
      }
    }
  }
}

std::vector<std::vector<int>> CoverageArray::counts(
    const std::vector<std::size_t>& selection) const {
  std::vector<std::vector<int>> out(num_criteria(), std::vector<int>(segments_, 0));
  for (std::size_t i : selection) {
    for (std::size_t j = 0; j < num_criteria(); ++j) ++out[j][segment_of_[i][j]];
  }
  return out;
}

CoverageArray coverage_array(const PerformanceMatrix& matrix,
                             const BreakpointGrid& grid) {
  const auto s = grid.uniform_segments();
  if (!s) {
    throw ValidationError(
        "reference-set selection needs the same number of segments on every criterion");
  }
  if (grid.num_criteria() != matrix.num_criteria()) {
    throw ValidationError("grid and matrix disagree on the number of criteria");
  }
  std::vector<std::vector<int>> seg(matrix.num_alternatives(),
                                    std::vector<int>(matrix.num_criteria()));
  for (std::size_t i = 0; i < matrix.num_alternatives(); ++i) {
    for (std::size_t j = 0; j < matrix.num_criteria(); ++j) {
      seg[i][j] = grid.locate(j, matrix.oriented_level(i, j));
    }
  }
  return CoverageArray(std::move(seg), *s);
}

DominancePairs dominance_pairs(const PerformanceMatrix& matrix) {
  DominancePairs out;
  const std::size_t m = matrix.num_alternatives();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = i + 1; k < m; ++k) {
      if (pareto_dominates(matrix, i, k) || pareto_dominates(matrix, k, i)) {
        out.emplace_back(i, k);
      }
    }
  }
  return out;
}

namespace {

// Builds the covering program; y_i is variable i.
opt::LinearProgram covering_program(const CoverageArray& coverage,
                                    const DominancePairs& dominance, int b,
                                    const std::set<std::size_t>& forbidden) {
  opt::LinearProgram lp;
  const std::size_t m = coverage.num_alternatives();
  opt::LinearTerms count;
  for (std::size_t i = 0; i < m; ++i) {
    const int y = lp.add_binary("y" + std::to_string(i));
    if (forbidden.count(i)) lp.set_bounds(y, 0.0, 0.0);
    count.emplace_back(y, 1.0);
  }
  for (std::size_t j = 0; j < coverage.num_criteria(); ++j) {
    for (int k = 0; k < coverage.segments(); ++k) {
      opt::LinearTerms terms;
      for (std::size_t i = 0; i < m; ++i) {
        if (coverage.covers(i, j, k)) terms.emplace_back(static_cast<int>(i), 1.0);
      }
      lp.add_constraint(std::move(terms), opt::Relation::kGreaterEqual, b,
                        "cover_" + std::to_string(j) + "_" + std::to_string(k));
    }
  }
  for (const auto& [i, k] : dominance) {
    lp.add_constraint({{static_cast<int>(i), 1.0}, {static_cast<int>(k), 1.0}},
                      opt::Relation::kLessEqual, 1.0,
                      "dom_" + std::to_string(i) + "_" + std::to_string(k));
  }
  lp.set_objective(opt::Sense::kMinimize, std::move(count));
  return lp;
}

std::vector<UncoverableCell> diagnose(const CoverageArray& coverage,
                                      const DominancePairs& dominance, int b,
                                      const std::set<std::size_t>& forbidden) {
  std::vector<UncoverableCell> cells;
  const std::size_t m = coverage.num_alternatives();
  for (std::size_t j = 0; j < coverage.num_criteria(); ++j) {
    for (int k = 0; k < coverage.segments(); ++k) {
      std::vector<std::size_t> cand;
      for (std::size_t i = 0; i < m; ++i) {
        if (coverage.covers(i, j, k) && !forbidden.count(i)) cand.push_back(i);
      }
      // Largest dominance-free subset of the candidates.
      opt::LinearProgram lp;
      opt::LinearTerms count;
      for (std::size_t i = 0; i < m; ++i) {
        const int y = lp.add_binary("y" + std::to_string(i));
        const bool allowed = std::find(cand.begin(), cand.end(), i) != cand.end();
        if (!allowed) lp.set_bounds(y, 0.0, 0.0);
        count.emplace_back(y, 1.0);
      }
      for (const auto& [a, c] : dominance) {
        lp.add_constraint({{static_cast<int>(a), 1.0}, {static_cast<int>(c), 1.0}},
                          opt::Relation::kLessEqual, 1.0);
      }
      lp.set_objective(opt::Sense::kMaximize, std::move(count));
      const opt::Solution sol = opt::solve_milp(lp);
      const auto free_cover =
          sol.optimal() ? static_cast<std::size_t>(std::llround(sol.objective)) : 0;
      if (free_cover < static_cast<std::size_t>(b)) {
        cells.push_back({j, k, cand.size(), free_cover});
      }
    }
  }
  return cells;
}

}  // namespace

ReferenceSelection select_reference_set(const CoverageArray& coverage,
                                        const DominancePairs& dominance, int b,
                                        const std::set<std::size_t>& forbidden) {
  if (b < 1) throw ValidationError("coverage requirement b must be at least 1");
  const std::size_t m = coverage.num_alternatives();
  for (const auto& [i, k] : dominance) {
    if (i >= m || k >= m) throw ValidationError("dominance pair index out of range");
  }

  ReferenceSelection result;
  opt::LinearProgram lp = covering_program(coverage, dominance, b, forbidden);
  const opt::Solution first = opt::solve_milp(lp);
  if (!first.optimal()) {
    result.uncoverable = diagnose(coverage, dominance, b, forbidden);
    result.joint_conflict = result.uncoverable.empty();
    return result;
  }
  const double optimum = std::round(first.objective);

  // Lexicographic tie-break: walk the indices in order and keep y_i = 1
  // whenever an optimal selection still exists with that choice.
  opt::LinearTerms all;
  for (std::size_t i = 0; i < m; ++i) all.emplace_back(static_cast<int>(i), 1.0);
  lp.add_constraint(all, opt::Relation::kEqual, optimum, "cardinality");
  lp.set_objective(opt::Sense::kMinimize, {});
  std::size_t chosen = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const int y = static_cast<int>(i);
    if (forbidden.count(i) || chosen == static_cast<std::size_t>(optimum)) {
      lp.set_bounds(y, 0.0, 0.0);
      continue;
    }
    lp.set_bounds(y, 1.0, 1.0);
    if (opt::solve_milp(lp).optimal()) {
      ++chosen;
      result.selected.push_back(i);
    } else {
      lp.set_bounds(y, 0.0, 0.0);
    }
  }
  if (result.selected.size() != static_cast<std::size_t>(optimum)) {
    throw InternalError("lexicographic reference-set refinement lost optimality");
  }
  result.feasible = true;
  return result;
}

AugmentedReference augment_reference_set(const PerformanceMatrix& matrix,
                                         const std::vector<std::size_t>& selected,
                                         const std::vector<std::size_t>& additions) {
  AugmentedReference out;
  out.reference = selected;
  for (std::size_t a : additions) {
    if (a >= matrix.num_alternatives()) {
      throw ValidationError("added alternative index out of range");
    }
    if (std::find(out.reference.begin(), out.reference.end(), a) ==
        out.reference.end()) {
      out.reference.push_back(a);
    }
  }
  for (std::size_t x = 0; x < out.reference.size(); ++x) {
    for (std::size_t y = x + 1; y < out.reference.size(); ++y) {
      const std::size_t i = out.reference[x];
      const std::size_t k = out.reference[y];
      if (pareto_dominates(matrix, i, k) || pareto_dominates(matrix, k, i)) {
        out.dominated.emplace_back(std::min(i, k), std::max(i, k));
        const bool ik = pareto_dominates(matrix, i, k);
        out.warnings.push_back("reference alternative '" +
                               matrix.id(ik ? i : k) + "' Pareto-dominates '" +
                               matrix.id(ik ? k : i) + "'");
      }
    }
  }
  return out;
}

}  // namespace bwd
