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

#include "bwd/model.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>

#include "bwd/error.h"

namespace bwd {

const char* to_string(Direction d) {
  return d == Direction::kBenefit ? "benefit" : "cost";
}

Direction parse_direction(const std::string& text) {
  if (text == "benefit") return Direction::kBenefit;
  if (text == "cost") return Direction::kCost;
  throw ValidationError("unknown criterion direction '" + text +
                        "' (expected benefit or cost)");
}

// ---------------------------------------------------------------------------
// PerformanceMatrix

PerformanceMatrix::PerformanceMatrix(std::vector<Criterion> criteria,
                                     std::vector<Alternative> alternatives)
    : criteria_(std::move(criteria)), alternatives_(std::move(alternatives)) {
  if (criteria_.empty()) {
    throw ValidationError("performance matrix needs at least one criterion");
  }
  if (alternatives_.empty()) {
    throw ValidationError("performance matrix needs at least one alternative");
  }
  for (const Criterion& c : criteria_) {
    if (!std::isfinite(c.lower) || !std::isfinite(c.upper)) {
      throw ValidationError("criterion '" + c.name + "' has a non-finite range");
    }
    if (!(c.lower < c.upper)) {
      throw ValidationError("criterion '" + c.name +
                            "' has a degenerate range (lower must be < upper)");
    }
  }
  std::set<std::string> seen;
  for (const Alternative& a : alternatives_) {
    if (!seen.insert(a.id).second) {
      throw ValidationError("duplicate alternative id '" + a.id + "'");
    }
    if (a.levels.size() != criteria_.size()) {
      throw ValidationError("alternative '" + a.id + "' has " +
                            std::to_string(a.levels.size()) +
                            " levels, expected " +
                            std::to_string(criteria_.size()));
    }
    for (std::size_t j = 0; j < criteria_.size(); ++j) {
      const double x = a.levels[j];
      if (!std::isfinite(x) || x < criteria_[j].lower || x > criteria_[j].upper) {
        throw ValidationError("level of '" + a.id + "' on criterion '" +
                              criteria_[j].name + "' lies outside its range");
      }
    }
  }
}

PerformanceMatrix PerformanceMatrix::with_observed_ranges(
    const std::vector<std::string>& names,
    const std::vector<Direction>& directions,
    std::vector<Alternative> alternatives) {
  if (names.size() != directions.size()) {
    throw ValidationError("criterion names and directions differ in length");
  }
  std::vector<Criterion> criteria(names.size());
  for (std::size_t j = 0; j < names.size(); ++j) {
    criteria[j].name = names[j];
    criteria[j].direction = directions[j];
    criteria[j].lower = std::numeric_limits<double>::infinity();
    criteria[j].upper = -std::numeric_limits<double>::infinity();
    for (const Alternative& a : alternatives) {
      if (j < a.levels.size()) {
        criteria[j].lower = std::min(criteria[j].lower, a.levels[j]);
        criteria[j].upper = std::max(criteria[j].upper, a.levels[j]);
      }
    }
  }
  return PerformanceMatrix(std::move(criteria), std::move(alternatives));
}

double PerformanceMatrix::oriented_level(std::size_t i, std::size_t j) const {
  const Criterion& c = criteria_[j];
  const double x = alternatives_[i].levels[j];
  return c.direction == Direction::kBenefit ? x : c.upper + c.lower - x;
}

std::vector<double> PerformanceMatrix::oriented_levels(std::size_t i) const {
  std::vector<double> out(criteria_.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = oriented_level(i, j);
  return out;
}

std::optional<std::size_t> PerformanceMatrix::index_of(const std::string& id) const {
  for (std::size_t i = 0; i < alternatives_.size(); ++i) {
    if (alternatives_[i].id == id) return i;
  }
  return std::nullopt;
}

std::size_t PerformanceMatrix::require_index(const std::string& id) const {
  if (auto i = index_of(id)) return *i;
  throw ValidationError("unknown alternative id '" + id + "'");
}

// ---------------------------------------------------------------------------
// BreakpointGrid

BreakpointGrid::BreakpointGrid(std::vector<std::vector<double>> breakpoints)
    : breakpoints_(std::move(breakpoints)) {
  for (std::size_t j = 0; j < breakpoints_.size(); ++j) {
    const auto& b = breakpoints_[j];
    if (b.size() < 2) {
      throw ValidationError("criterion " + std::to_string(j) +
                            " needs at least one segment");
    }
    const double range = b.back() - b.front();
    if (!(range > 0)) {
      throw ValidationError("criterion " + std::to_string(j) +
                            " has a degenerate breakpoint range");
    }
    const double step = range / static_cast<double>(b.size() - 1);
    for (std::size_t k = 0; k + 1 < b.size(); ++k) {
      if (!(b[k] < b[k + 1]) ||
          std::abs((b[k + 1] - b[k]) - step) > 1e-9 * range) {
        throw ValidationError("breakpoints of criterion " + std::to_string(j) +
                              " are not equally spaced and increasing");
      }
    }
  }
}

int BreakpointGrid::locate(std::size_t j, double x) const {
  const auto& b = breakpoints_.at(j);
  const double tol = 1e-9 * (b.back() - b.front());
  if (x < b.front() - tol || x > b.back() + tol) {
    throw OutOfRangeError("level " + std::to_string(x) +
                          " outside the range of criterion " + std::to_string(j));
  }
  const int s = static_cast<int>(b.size()) - 1;
  for (int k = s - 1; k > 0; --k) {
    if (x >= b[k] - tol) return k;
  }
  return 0;
}

std::optional<int> BreakpointGrid::uniform_segments() const {
  if (breakpoints_.empty()) return std::nullopt;
  const int s = segments(0);
  for (std::size_t j = 1; j < breakpoints_.size(); ++j) {
    if (segments(j) != s) return std::nullopt;
  }
  return s;
}

BreakpointGrid build_grid(const PerformanceMatrix& matrix, int segments) {
  std::vector<int> all(matrix.num_criteria(), segments);
  return build_grid(matrix, all);
}

BreakpointGrid build_grid(const PerformanceMatrix& matrix,
                          std::span<const int> segments) {
  if (segments.size() != matrix.num_criteria()) {
    throw ValidationError("segment list has " + std::to_string(segments.size()) +
                          " entries for " + std::to_string(matrix.num_criteria()) +
                          " criteria");
  }
  std::vector<std::vector<double>> points(matrix.num_criteria());
  for (std::size_t j = 0; j < matrix.num_criteria(); ++j) {
    const Criterion& c = matrix.criterion(j);
    const int s = segments[j];
    if (s < 1) {
      throw ValidationError("criterion '" + c.name + "' needs at least one segment");
    }
    if (!(c.lower < c.upper)) {
      throw ValidationError("criterion '" + c.name + "' has a degenerate range");
    }
    // Reflection of a cost criterion maps [lower, upper] onto itself, so the
    // grid is the same in both orientations.
    points[j].resize(s + 1);
    for (int k = 0; k <= s; ++k) {
      points[j][k] = c.lower + (c.upper - c.lower) * k / s;
    }
    points[j][s] = c.upper;
  }
  return BreakpointGrid(std::move(points));
}

// ---------------------------------------------------------------------------
// PiecewiseValueModel

PiecewiseValueModel::PiecewiseValueModel(BreakpointGrid grid,
                                         std::vector<std::vector<double>> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.num_criteria()) {
    throw ValidationError("value model has a wrong number of criteria");
  }
  double total = 0.0;
  for (std::size_t j = 0; j < values_.size(); ++j) {
    const auto& v = values_[j];
    if (v.size() != grid_.breakpoints(j).size()) {
      throw ValidationError("value model criterion " + std::to_string(j) +
                            " has a wrong number of breakpoint values");
    }
    if (std::abs(v.front()) > kValueTolerance) {
      throw ValidationError("value function " + std::to_string(j) +
                            " is not anchored at zero");
    }
    for (std::size_t k = 0; k + 1 < v.size(); ++k) {
      if (v[k + 1] < v[k] - kValueTolerance) {
        throw ValidationError("value function " + std::to_string(j) +
                              " is not monotone");
      }
    }
    total += v.back();
  }
  if (std::abs(total - 1.0) > kValueTolerance) {
    throw ValidationError("value model is not normalized (weights sum to " +
                          std::to_string(total) + ")");
  }
}

double PiecewiseValueModel::evaluate_attribute(std::size_t j, double x) const {
  const int k = grid_.locate(j, x);
  const auto& b = grid_.breakpoints(j);
  const auto& v = values_[j];
  const double lo = b[k];
  const double hi = b[k + 1];
  if (x <= lo) return v[k];
  if (x >= hi) return v[k + 1];
  return v[k] + (x - lo) / (hi - lo) * (v[k + 1] - v[k]);
}

double PiecewiseValueModel::evaluate_global(std::span<const double> levels) const {
  if (levels.size() != values_.size()) {
    throw ValidationError("consequence vector has a wrong number of levels");
  }
  double total = 0.0;
  for (std::size_t j = 0; j < levels.size(); ++j) {
    total += evaluate_attribute(j, levels[j]);
  }
  return total;
}

double PiecewiseValueModel::evaluate(const PerformanceMatrix& matrix,
                                     std::size_t i) const {
  const std::vector<double> levels = matrix.oriented_levels(i);
  return evaluate_global(levels);
}

std::vector<double> PiecewiseValueModel::evaluate_all(
    const PerformanceMatrix& matrix) const {
  std::vector<double> out(matrix.num_alternatives());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = evaluate(matrix, i);
  return out;
}

bool pareto_dominates(const PerformanceMatrix& matrix, std::size_t i,
                      std::size_t other) {
  bool strict = false;
  for (std::size_t j = 0; j < matrix.num_criteria(); ++j) {
    const double a = matrix.oriented_level(i, j);
    const double b = matrix.oriented_level(other, j);
    if (a < b) return false;
    if (a > b) strict = true;
  }
  return strict;
}

// ---------------------------------------------------------------------------
// ComparisonSet

namespace {

void check_judgment(const Judgment& a, const std::string& where) {
  if (!std::isfinite(a.lower) || !std::isfinite(a.upper)) {
    throw ValidationError(where + ": judgment is not a finite number");
  }
  if (a.lower > a.upper) {
    throw ValidationError(where + ": interval lower bound exceeds upper bound");
  }
  if (a.lower < kScaleMin || a.upper > kScaleMax) {
    throw ValidationError(where + ": judgment outside the 1-9 scale");
  }
  if (!a.interval && a.lower != a.upper) {
    throw ValidationError(where + ": real judgment with distinct bounds");
  }
}

}  // namespace

ComparisonSet::ComparisonSet(std::vector<std::size_t> reference, std::size_t best,
                             std::size_t worst, std::vector<Judgment> bo,
                             std::vector<Judgment> ow)
    : reference_(std::move(reference)),
      best_(best),
      worst_(worst),
      bo_(std::move(bo)),
      ow_(std::move(ow)) {
  if (reference_.size() < 2) {
    throw ValidationError("reference set needs at least two alternatives");
  }
  std::set<std::size_t> unique(reference_.begin(), reference_.end());
  if (unique.size() != reference_.size()) {
    throw ValidationError("reference set lists an alternative twice");
  }
  if (best_ == worst_) {
    throw ValidationError("best and worst alternatives must differ");
  }
  auto b = position_of(best_);
  auto w = position_of(worst_);
  if (!b || !w) {
    throw ValidationError("best and worst must belong to the reference set");
  }
  best_pos_ = *b;
  worst_pos_ = *w;
  if (bo_.size() != reference_.size() || ow_.size() != reference_.size()) {
    throw ValidationError("judgment vectors must have one entry per reference alternative");
  }
  for (std::size_t p = 0; p < reference_.size(); ++p) {
    check_judgment(bo_[p], "best-to-others entry " + std::to_string(p));
    check_judgment(ow_[p], "others-to-worst entry " + std::to_string(p));
  }
  if (bo_[best_pos_].lower != 1.0 || bo_[best_pos_].upper != 1.0) {
    throw ValidationError("best-to-best judgment must be 1");
  }
  if (ow_[worst_pos_].lower != 1.0 || ow_[worst_pos_].upper != 1.0) {
    throw ValidationError("worst-to-worst judgment must be 1");
  }
  // a_BW appears in both vectors and must be stated once.
  const Judgment& bw1 = bo_[worst_pos_];
  const Judgment& bw2 = ow_[best_pos_];
  if (bw1.lower != bw2.lower || bw1.upper != bw2.upper) {
    throw ValidationError(
        "best-to-worst judgment differs between the two vectors");
  }
}

bool ComparisonSet::real_valued() const {
  auto is_real = [](const Judgment& a) { return !a.interval; };
  return std::all_of(bo_.begin(), bo_.end(), is_real) &&
         std::all_of(ow_.begin(), ow_.end(), is_real);
}

bool ComparisonSet::has_proper_interval() const {
  auto proper = [](const Judgment& a) { return a.lower < a.upper; };
  return std::any_of(bo_.begin(), bo_.end(), proper) ||
         std::any_of(ow_.begin(), ow_.end(), proper);
}

std::optional<std::size_t> ComparisonSet::position_of(std::size_t alternative) const {
  for (std::size_t p = 0; p < reference_.size(); ++p) {
    if (reference_[p] == alternative) return p;
  }
  return std::nullopt;
}

void ComparisonSet::check_indices(std::size_t num_alternatives) const {
  for (std::size_t i : reference_) {
    if (i >= num_alternatives) {
      throw ValidationError("reference index " + std::to_string(i) +
                            " outside the performance matrix");
    }
  }
}

}  // namespace bwd
