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

#include <algorithm>
#include <cmath>
#include <string>

#include "bwd/error.h"
#include "bwd/optimizer.h"

namespace bwd::opt {

const char* to_string(Status s) {
  switch (s) {
    case Status::kOptimal:
      return "optimal";
    case Status::kInfeasible:
      return "infeasible";
    case Status::kUnbounded:
      return "unbounded";
  }
  return "unknown";
}

namespace {

void check_terms(const LinearTerms& terms, int n, const std::string& where) {
  for (const auto& [var, coef] : terms) {
    if (var < 0 || var >= n) {
      throw ValidationError(where + " references undeclared variable " + std::to_string(var));
    }
    if (!std::isfinite(coef)) throw ValidationError(where + " has a non-finite coefficient");
  }
}

void check_variable(const Variable& v) {
  if (std::isnan(v.lower) || std::isnan(v.upper) || v.lower > v.upper) {
    throw ValidationError("variable " + v.name + " has invalid bounds");
  }
  if (v.type == VarType::kBinary &&
      (v.lower < 0.0 || v.upper > 1.0 || (v.lower != 0.0 && v.lower != 1.0) ||
       (v.upper != 0.0 && v.upper != 1.0))) {
    throw ValidationError("binary variable " + v.name + " has bounds outside {0, 1}");
  }
}

}  // namespace

int LinearProgram::add_variable(std::string name, double lower, double upper,
                                VarType type) {
  if (name.empty()) name = "x" + std::to_string(variables_.size());
  Variable v{std::move(name), lower, upper, type};
  check_variable(v);
  variables_.push_back(std::move(v));
  return static_cast<int>(variables_.size()) - 1;
}

void LinearProgram::add_constraint(LinearTerms terms, Relation relation,
                                   double rhs, std::string name) {
  if (name.empty()) name = "c" + std::to_string(constraints_.size());
  check_terms(terms, static_cast<int>(variables_.size()), "constraint " + name);
  if (!std::isfinite(rhs)) throw ValidationError("constraint " + name + " has a non-finite rhs");
  constraints_.push_back({std::move(name), std::move(terms), relation, rhs});
}

void LinearProgram::set_objective(Sense sense, LinearTerms terms, double offset) {
  sense_ = sense;
  objective_ = std::move(terms);
  offset_ = offset;
}

void LinearProgram::set_bounds(int var, double lower, double upper) {
  Variable& v = variables_.at(var);
  Variable next = v;
  next.lower = lower;
  next.upper = upper;
  check_variable(next);
  v = std::move(next);
}

bool LinearProgram::has_binaries() const {
  return std::any_of(variables_.begin(), variables_.end(), [](const Variable& v) {
    return v.type == VarType::kBinary;
  });
}

void LinearProgram::validate() const {
  const int n = static_cast<int>(variables_.size());
  check_terms(objective_, n, "objective");
  for (const Constraint& c : constraints_) {
    check_terms(c.terms, n, "constraint " + c.name);
    if (!std::isfinite(c.rhs)) {
      throw ValidationError("constraint " + c.name + " has a non-finite rhs");
    }
  }
  for (const Variable& v : variables_) check_variable(v);
}

double LinearProgram::max_violation(const std::vector<double>& x) const {
  double worst = 0.0;
  for (std::size_t v = 0; v < variables_.size(); ++v) {
    worst = std::max(worst, variables_[v].lower - x[v]);
    worst = std::max(worst, x[v] - variables_[v].upper);
  }
  for (const Constraint& c : constraints_) {
    double lhs = 0.0;
    for (const auto& [var, coef] : c.terms) lhs += coef * x[var];
    switch (c.relation) {
      case Relation::kLessEqual:
        worst = std::max(worst, lhs - c.rhs);
        break;
      case Relation::kGreaterEqual:
        worst = std::max(worst, c.rhs - lhs);
        break;
      case Relation::kEqual:
        worst = std::max(worst, std::abs(lhs - c.rhs));
        break;
    }
  }
  return worst;
}

double LinearProgram::evaluate_objective(const std::vector<double>& x) const {
  double total = offset_;
  for (const auto& [var, coef] : objective_) total += coef * x[var];
  return total;
}

}  // namespace bwd::opt
