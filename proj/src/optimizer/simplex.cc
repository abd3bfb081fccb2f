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

// Dense two-phase revised simplex.
//
// The program is first rewritten in standard form  min c'y, Ay = b, y >= 0,
// b >= 0: finite lower bounds are shifted out, upper-bounded-only variables
// are reflected, free variables are split, finite upper bounds become rows,
// and every row receives a slack (inequalities) and, when the slack cannot
// start in the basis, an artificial. The basis inverse is kept explicitly and
// refactored from scratch every kRefactorPeriod pivots.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "bwd/error.h"
#include "bwd/optimizer.h"

namespace bwd::opt {
namespace {

constexpr double kPivotTolerance = 1e-9;
constexpr double kRatioTieTolerance = 1e-12;
constexpr int kRefactorPeriod = 50;
constexpr int kDegenerateBeforeBland = 25;

// How an original variable is recovered from standard-form columns:
// x = offset + sign * y[pos] - y[neg].
struct ColumnMap {
  int pos = -1;
  int neg = -1;
  double sign = 1.0;
  double offset = 0.0;
};

class StandardForm {
 public:
  explicit StandardForm(const LinearProgram& p) : program_(p) { build(); }

  Solution solve();

 private:
  void build();
  void add_row(const std::vector<std::pair<int, double>>& cols, Relation rel,
               double rhs, bool original, int original_index);
  void refactor();
  // Runs simplex iterations with the given cost vector. Returns false when
  // the problem is unbounded in the current phase.
  bool iterate(const std::vector<double>& cost, bool phase_one);
  void drive_out_artificials();
  std::vector<double> duals_of(const std::vector<double>& cost) const;

  const LinearProgram& program_;
  std::vector<ColumnMap> map_;
  int structural_ = 0;

  // Rows are stored sparsely while building, then densified.
  struct Row {
    std::vector<std::pair<int, double>> cols;
    Relation relation;
    double rhs;
    bool flipped = false;
    int original = -1;  // index of the originating constraint, or -1
  };
  std::vector<Row> rows_;

  int m_ = 0;  // rows
  int n_ = 0;  // all columns: structural, slack, artificial
  std::vector<std::vector<double>> cols_;  // column-major A
  std::vector<double> b_;
  std::vector<double> cost_;  // phase-two cost
  std::vector<bool> artificial_;
  std::vector<int> basis_;
  std::vector<char> in_basis_;
  std::vector<double> binv_;  // m x m row-major
  std::vector<double> xb_;
  long iterations_ = 0;
  int since_refactor_ = 0;
};

void StandardForm::build() {
  const auto& vars = program_.variables();
  map_.resize(vars.size());
  std::vector<std::pair<int, double>> upper_rows;  // (column, width)
  for (std::size_t v = 0; v < vars.size(); ++v) {
    const double lo = vars[v].lower;
    const double hi = vars[v].upper;
    ColumnMap& cm = map_[v];
    if (std::isfinite(lo) && std::isfinite(hi) && lo == hi) {
      cm.offset = lo;  // fixed: no column
    } else if (std::isfinite(lo)) {
      cm.pos = structural_++;
      cm.offset = lo;
      if (std::isfinite(hi)) upper_rows.emplace_back(cm.pos, hi - lo);
    } else if (std::isfinite(hi)) {
      cm.pos = structural_++;
      cm.sign = -1.0;
      cm.offset = hi;
    } else {
      cm.pos = structural_++;
      cm.neg = structural_++;
    }
  }

  const auto& cons = program_.constraints();
  for (std::size_t i = 0; i < cons.size(); ++i) {
    std::vector<double> dense(structural_, 0.0);
    double rhs = cons[i].rhs;
    for (const auto& [var, coef] : cons[i].terms) {
      const ColumnMap& cm = map_[var];
      rhs -= coef * cm.offset;
      if (cm.pos >= 0) dense[cm.pos] += coef * cm.sign;
      if (cm.neg >= 0) dense[cm.neg] -= coef;
    }
    std::vector<std::pair<int, double>> sparse;
    for (int c = 0; c < structural_; ++c) {
      if (dense[c] != 0.0) sparse.emplace_back(c, dense[c]);
    }
    add_row(sparse, cons[i].relation, rhs, true, static_cast<int>(i));
  }
  for (const auto& [col, width] : upper_rows) {
    add_row({{col, 1.0}}, Relation::kLessEqual, width, false, -1);
  }

  m_ = static_cast<int>(rows_.size());
  // Columns: structural, then one slack per inequality, then artificials.
  n_ = structural_;
  std::vector<int> slack_of(m_, -1);
  for (int r = 0; r < m_; ++r) {
    if (rows_[r].relation != Relation::kEqual) slack_of[r] = n_++;
  }
  cols_.assign(n_, std::vector<double>(m_, 0.0));
  b_.assign(m_, 0.0);
  for (int r = 0; r < m_; ++r) {
    Row& row = rows_[r];
    for (const auto& [c, a] : row.cols) cols_[c][r] = a;
    if (slack_of[r] >= 0) {
      cols_[slack_of[r]][r] = row.relation == Relation::kLessEqual ? 1.0 : -1.0;
    }
    b_[r] = row.rhs;
    if (b_[r] < 0.0) {
      row.flipped = true;
      b_[r] = -b_[r];
      for (int c = 0; c < n_; ++c) cols_[c][r] = -cols_[c][r];
    }
  }
  artificial_.assign(n_, false);
  basis_.assign(m_, -1);
  for (int r = 0; r < m_; ++r) {
    if (slack_of[r] >= 0 && cols_[slack_of[r]][r] == 1.0) {
      basis_[r] = slack_of[r];
    } else {
      std::vector<double> col(m_, 0.0);
      col[r] = 1.0;
      cols_.push_back(std::move(col));
      artificial_.push_back(true);
      basis_[r] = n_++;
    }
  }
  in_basis_.assign(n_, 0);
  for (int r = 0; r < m_; ++r) in_basis_[basis_[r]] = 1;

  cost_.assign(n_, 0.0);
  const double sense = program_.sense() == Sense::kMaximize ? -1.0 : 1.0;
  for (const auto& [var, coef] : program_.objective()) {
    const ColumnMap& cm = map_[var];
    if (cm.pos >= 0) cost_[cm.pos] += sense * coef * cm.sign;
    if (cm.neg >= 0) cost_[cm.neg] -= sense * coef;
  }
}

void StandardForm::add_row(const std::vector<std::pair<int, double>>& cols,
                           Relation rel, double rhs, bool original,
                           int original_index) {
  Row row;
  row.cols = cols;
  row.relation = rel;
  row.rhs = rhs;
  row.original = original ? original_index : -1;
  rows_.push_back(std::move(row));
}

void StandardForm::refactor() {
  // Gauss-Jordan inversion of the basis matrix with partial pivoting.
  std::vector<double> a(static_cast<std::size_t>(m_) * m_, 0.0);
  for (int r = 0; r < m_; ++r) {
    for (int c = 0; c < m_; ++c) a[r * m_ + c] = cols_[basis_[c]][r];
  }
  binv_.assign(static_cast<std::size_t>(m_) * m_, 0.0);
  for (int r = 0; r < m_; ++r) binv_[r * m_ + r] = 1.0;
  for (int c = 0; c < m_; ++c) {
    int piv = c;
    for (int r = c + 1; r < m_; ++r) {
      if (std::abs(a[r * m_ + c]) > std::abs(a[piv * m_ + c])) piv = r;
    }
    if (std::abs(a[piv * m_ + c]) < 1e-13) {
      throw InternalError("simplex basis became singular");
    }
    if (piv != c) {
      for (int k = 0; k < m_; ++k) {
        std::swap(a[piv * m_ + k], a[c * m_ + k]);
        std::swap(binv_[piv * m_ + k], binv_[c * m_ + k]);
      }
    }
    const double d = a[c * m_ + c];
    for (int k = 0; k < m_; ++k) {
      a[c * m_ + k] /= d;
      binv_[c * m_ + k] /= d;
    }
    for (int r = 0; r < m_; ++r) {
      if (r == c) continue;
      const double f = a[r * m_ + c];
      if (f == 0.0) continue;
      for (int k = 0; k < m_; ++k) {
        a[r * m_ + k] -= f * a[c * m_ + k];
        binv_[r * m_ + k] -= f * binv_[c * m_ + k];
      }
    }
  }
  // binv_ now maps row r of the system to basis position r.
  xb_.assign(m_, 0.0);
  for (int r = 0; r < m_; ++r) {
    double s = 0.0;
    for (int k = 0; k < m_; ++k) s += binv_[r * m_ + k] * b_[k];
    xb_[r] = s;
  }
  since_refactor_ = 0;
}

std::vector<double> StandardForm::duals_of(const std::vector<double>& cost) const {
  std::vector<double> y(m_, 0.0);
  for (int r = 0; r < m_; ++r) {
    const double cb = cost[basis_[r]];
    if (cb == 0.0) continue;
    for (int k = 0; k < m_; ++k) y[k] += cb * binv_[r * m_ + k];
  }
  return y;
}

bool StandardForm::iterate(const std::vector<double>& cost, bool phase_one) {
  const long limit = 20000 + 200L * (m_ + n_);
  int degenerate_run = 0;
  bool bland = false;
  std::vector<double> u(m_);
  while (true) {
    if (++iterations_ > limit) {
      throw InternalError("simplex iteration limit exceeded");
    }
    if (since_refactor_ >= kRefactorPeriod) refactor();

    const std::vector<double> y = duals_of(cost);
    int entering = -1;
    double best = -kOptimalityTolerance;
    for (int j = 0; j < n_; ++j) {
      if (in_basis_[j]) continue;
      if (!phase_one && artificial_[j]) continue;
      double d = cost[j];
      const auto& col = cols_[j];
      for (int r = 0; r < m_; ++r) d -= y[r] * col[r];
      if (d < best) {
        entering = j;
        if (bland) break;
        best = d;
      }
    }
    if (entering < 0) return true;

    const auto& a = cols_[entering];
    for (int r = 0; r < m_; ++r) {
      double s = 0.0;
      for (int k = 0; k < m_; ++k) s += binv_[r * m_ + k] * a[k];
      u[r] = s;
    }

    // Ratio test. Basic artificials in phase two are pinned at zero, so any
    // nonzero entry in their row blocks the step.
    double theta = kInfinity;
    for (int r = 0; r < m_; ++r) {
      if (!phase_one && artificial_[basis_[r]] && std::abs(u[r]) > kPivotTolerance) {
        theta = 0.0;
        break;
      }
      if (u[r] > kPivotTolerance) {
        theta = std::min(theta, std::max(xb_[r], 0.0) / u[r]);
      }
    }
    if (theta == kInfinity) return false;

    int leaving = -1;
    for (int r = 0; r < m_; ++r) {
      double ratio;
      if (!phase_one && artificial_[basis_[r]] && std::abs(u[r]) > kPivotTolerance) {
        ratio = 0.0;
      } else if (u[r] > kPivotTolerance) {
        ratio = std::max(xb_[r], 0.0) / u[r];
      } else {
        continue;
      }
      if (ratio > theta + kRatioTieTolerance) continue;
      if (leaving < 0) {
        leaving = r;
      } else if (bland) {
        if (basis_[r] < basis_[leaving]) leaving = r;
      } else if (std::abs(u[r]) > std::abs(u[leaving])) {
        leaving = r;
      }
    }

    if (theta <= kRatioTieTolerance) {
      if (++degenerate_run >= kDegenerateBeforeBland) bland = true;
    } else {
      degenerate_run = 0;
      bland = false;
    }

    // Pivot.
    const double pivot = u[leaving];
    const double step = xb_[leaving] / pivot;
    for (int r = 0; r < m_; ++r) {
      if (r != leaving) xb_[r] -= step * u[r];
    }
    xb_[leaving] = step;
    double* prow = &binv_[static_cast<std::size_t>(leaving) * m_];
    for (int k = 0; k < m_; ++k) prow[k] /= pivot;
    for (int r = 0; r < m_; ++r) {
      if (r == leaving || u[r] == 0.0) continue;
      const double f = u[r];
      double* row = &binv_[static_cast<std::size_t>(r) * m_];
      for (int k = 0; k < m_; ++k) row[k] -= f * prow[k];
    }
    in_basis_[basis_[leaving]] = 0;
    basis_[leaving] = entering;
    in_basis_[entering] = 1;
    ++since_refactor_;
  }
}

void StandardForm::drive_out_artificials() {
  for (int r = 0; r < m_; ++r) {
    if (!artificial_[basis_[r]]) continue;
    int best = -1;
    double best_abs = 1e-9;
    for (int j = 0; j < n_; ++j) {
      if (in_basis_[j] || artificial_[j]) continue;
      double alpha = 0.0;
      for (int k = 0; k < m_; ++k) alpha += binv_[r * m_ + k] * cols_[j][k];
      if (std::abs(alpha) > best_abs) {
        best_abs = std::abs(alpha);
        best = j;
      }
    }
    if (best < 0) continue;  // redundant row; the artificial stays at zero
    in_basis_[basis_[r]] = 0;
    basis_[r] = best;
    in_basis_[best] = 1;
    refactor();
  }
}

Solution StandardForm::solve() {
  Solution sol;
  refactor();

  const bool needs_phase_one =
      std::any_of(basis_.begin(), basis_.end(), [&](int j) { return artificial_[j]; });
  if (needs_phase_one) {
    std::vector<double> phase_cost(n_, 0.0);
    for (int j = 0; j < n_; ++j) phase_cost[j] = artificial_[j] ? 1.0 : 0.0;
    iterate(phase_cost, true);  // phase one is bounded below by zero
    refactor();
    double infeasibility = 0.0;
    double bmax = 0.0;
    for (int r = 0; r < m_; ++r) {
      if (artificial_[basis_[r]]) infeasibility += std::max(xb_[r], 0.0);
      bmax = std::max(bmax, b_[r]);
    }
    if (infeasibility > kFeasibilityTolerance * (1.0 + bmax)) {
      sol.status = Status::kInfeasible;
      sol.iterations = iterations_;
      return sol;
    }
    for (int r = 0; r < m_; ++r) {
      if (artificial_[basis_[r]]) xb_[r] = 0.0;
    }
    drive_out_artificials();
  }

  if (!iterate(cost_, false)) {
    sol.status = Status::kUnbounded;
    sol.iterations = iterations_;
    return sol;
  }
  refactor();

  std::vector<double> y_std(n_, 0.0);
  for (int r = 0; r < m_; ++r) y_std[basis_[r]] = std::max(xb_[r], 0.0);

  const auto& vars = program_.variables();
  sol.values.assign(vars.size(), 0.0);
  for (std::size_t v = 0; v < vars.size(); ++v) {
    const ColumnMap& cm = map_[v];
    double x = cm.offset;
    if (cm.pos >= 0) x += cm.sign * y_std[cm.pos];
    if (cm.neg >= 0) x -= y_std[cm.neg];
    // Snap round-off onto the bounds.
    if (x < vars[v].lower && x > vars[v].lower - kFeasibilityTolerance) x = vars[v].lower;
    if (x > vars[v].upper && x < vars[v].upper + kFeasibilityTolerance) x = vars[v].upper;
    sol.values[v] = x;
  }
  sol.status = Status::kOptimal;
  sol.objective = program_.evaluate_objective(sol.values);
  sol.iterations = iterations_;

  const std::vector<double> y = duals_of(cost_);
  const double sense = program_.sense() == Sense::kMaximize ? -1.0 : 1.0;
  sol.duals.assign(program_.num_constraints(), 0.0);
  for (int r = 0; r < m_; ++r) {
    if (rows_[r].original < 0) continue;
    sol.duals[rows_[r].original] = sense * (rows_[r].flipped ? -y[r] : y[r]);
  }

  const double violation = program_.max_violation(sol.values);
  if (violation > kFeasibilityTolerance) {
    throw InternalError("simplex returned a point violating constraints by " +
                        std::to_string(violation));
  }
  return sol;
}

}  // namespace

Solution solve_lp(const LinearProgram& program) {
  program.validate();
  StandardForm form(program);
  return form.solve();
}

}  // namespace bwd::opt
