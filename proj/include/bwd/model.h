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

#ifndef BWD_MODEL_H_
#define BWD_MODEL_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bwd {

// Absolute tolerance for equality of quantities on the [0, 1] value scale.
inline constexpr double kValueTolerance = 1e-9;

enum class Direction { kBenefit, kCost };

const char* to_string(Direction d);
Direction parse_direction(const std::string& text);

struct Criterion {
  std::string name;
  Direction direction = Direction::kBenefit;
  double lower = 0.0;
  double upper = 1.0;

  double range() const { return upper - lower; }
};

struct Alternative {
  std::string id;
  std::vector<double> levels;  // original units, one per criterion
};

// m alternatives evaluated on n criteria. Levels are stored in original units;
// oriented_level() maps cost criteria onto a benefit scale by reflecting the
// level inside [lower, upper], which is the coordinate system all solvers use.
class PerformanceMatrix {
 public:
  PerformanceMatrix() = default;
  // Throws ValidationError when any invariant fails.
  PerformanceMatrix(std::vector<Criterion> criteria,
                    std::vector<Alternative> alternatives);

  // Ranges taken from the observed column minima and maxima.
  static PerformanceMatrix with_observed_ranges(
      const std::vector<std::string>& names,
      const std::vector<Direction>& directions,
      std::vector<Alternative> alternatives);

  std::size_t num_alternatives() const { return alternatives_.size(); }
  std::size_t num_criteria() const { return criteria_.size(); }
  const std::vector<Criterion>& criteria() const { return criteria_; }
  const std::vector<Alternative>& alternatives() const { return alternatives_; }
  const Criterion& criterion(std::size_t j) const { return criteria_.at(j); }
  const Alternative& alternative(std::size_t i) const {
    return alternatives_.at(i);
  }
  const std::string& id(std::size_t i) const { return alternatives_.at(i).id; }

  double level(std::size_t i, std::size_t j) const {
    return alternatives_[i].levels[j];
  }
  double oriented_level(std::size_t i, std::size_t j) const;
  std::vector<double> oriented_levels(std::size_t i) const;

  std::optional<std::size_t> index_of(const std::string& id) const;
  // Like index_of but throws ValidationError naming the unknown id.
  std::size_t require_index(const std::string& id) const;

 private:
  std::vector<Criterion> criteria_;
  std::vector<Alternative> alternatives_;
};

// Equally spaced breakpoints per criterion, in benefit orientation.
class BreakpointGrid {
 public:
  BreakpointGrid() = default;
  explicit BreakpointGrid(std::vector<std::vector<double>> breakpoints);

  std::size_t num_criteria() const { return breakpoints_.size(); }
  int segments(std::size_t j) const {
    return static_cast<int>(breakpoints_.at(j).size()) - 1;
  }
  const std::vector<double>& breakpoints(std::size_t j) const {
    return breakpoints_.at(j);
  }
  double lower(std::size_t j) const { return breakpoints_.at(j).front(); }
  double upper(std::size_t j) const { return breakpoints_.at(j).back(); }

  // Segment k such that x lies in [x^k, x^{k+1}); the last segment is closed.
  // Levels within 1e-9 * range of a breakpoint are treated as on it.
  // Throws OutOfRangeError outside [lower, upper].
  int locate(std::size_t j, double x) const;

  // The common segment count, or nullopt when criteria differ.
  std::optional<int> uniform_segments() const;

 private:
  std::vector<std::vector<double>> breakpoints_;
};

BreakpointGrid build_grid(const PerformanceMatrix& matrix, int segments);
BreakpointGrid build_grid(const PerformanceMatrix& matrix,
                          std::span<const int> segments);

// Piecewise-linear additive value model. values[j][k] is v_j(x_j^k); weights
// are implicit as v_j(upper_j) and sum to one.
class PiecewiseValueModel {
 public:
  PiecewiseValueModel() = default;
  // Throws ValidationError on non-monotone, non-anchored, or unnormalized input.
  PiecewiseValueModel(BreakpointGrid grid, std::vector<std::vector<double>> values);

  const BreakpointGrid& grid() const { return grid_; }
  const std::vector<std::vector<double>>& values() const { return values_; }
  double weight(std::size_t j) const { return values_.at(j).back(); }

  // x in benefit orientation.
  double evaluate_attribute(std::size_t j, double x) const;
  // levels in benefit orientation, one per criterion.
  double evaluate_global(std::span<const double> levels) const;
  double evaluate(const PerformanceMatrix& matrix, std::size_t i) const;
  std::vector<double> evaluate_all(const PerformanceMatrix& matrix) const;

 private:
  BreakpointGrid grid_;
  std::vector<std::vector<double>> values_;
};

// True iff row i is at least as good as row other on every criterion and
// strictly better on one (benefit orientation).
bool pareto_dominates(const PerformanceMatrix& matrix, std::size_t i,
                      std::size_t other);

// A judgment on the 1-9 scale: a real number, or an interval [lower, upper].
struct Judgment {
  double lower = 1.0;
  double upper = 1.0;
  bool interval = false;  // how it was entered; [a, a] still counts as interval

  static Judgment real(double a) { return {a, a, false}; }
  static Judgment range(double lo, double hi) { return {lo, hi, true}; }

  bool degenerate() const { return lower == upper; }
  double value() const { return lower; }  // meaningful for real judgments

  friend bool operator==(const Judgment&, const Judgment&) = default;
};

inline constexpr double kScaleMin = 1.0;
inline constexpr double kScaleMax = 9.0;

// Best-to-others and others-to-worst judgments over a reference set. Indices
// refer to rows of a PerformanceMatrix; bo and ow are aligned with reference.
class ComparisonSet {
 public:
  ComparisonSet() = default;
  // Throws ValidationError when any invariant fails.
  ComparisonSet(std::vector<std::size_t> reference, std::size_t best,
                std::size_t worst, std::vector<Judgment> bo,
                std::vector<Judgment> ow);

  const std::vector<std::size_t>& reference() const { return reference_; }
  std::size_t size() const { return reference_.size(); }
  std::size_t best() const { return best_; }
  std::size_t worst() const { return worst_; }
  std::size_t best_position() const { return best_pos_; }
  std::size_t worst_position() const { return worst_pos_; }
  const std::vector<Judgment>& bo() const { return bo_; }
  const std::vector<Judgment>& ow() const { return ow_; }

  // True when every judgment is a real number (no interval entries at all).
  bool real_valued() const;
  // True when some judgment has lower < upper.
  bool has_proper_interval() const;
  // a_BW; requires a real-valued set.
  double a_bw() const { return bo_[worst_pos_].value(); }

  std::optional<std::size_t> position_of(std::size_t alternative) const;

  // Throws ValidationError if an index is >= num_alternatives.
  void check_indices(std::size_t num_alternatives) const;

  friend bool operator==(const ComparisonSet&, const ComparisonSet&) = default;

 private:
  std::vector<std::size_t> reference_;
  std::size_t best_ = 0;
  std::size_t worst_ = 0;
  std::size_t best_pos_ = 0;
  std::size_t worst_pos_ = 0;
  std::vector<Judgment> bo_;
  std::vector<Judgment> ow_;
};

}  // namespace bwd

#endif  // BWD_MODEL_H_
