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

#ifndef BWD_OPTIMIZER_H_
#define BWD_OPTIMIZER_H_

// Small self-contained LP / binary MILP engine: dense revised simplex (two
// phases, Dantzig pricing with a Bland fallback against cycling) and
// best-bound branch-and-bound over binary variables.

#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace bwd::opt {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();
inline constexpr double kFeasibilityTolerance = 1e-7;
inline constexpr double kOptimalityTolerance = 1e-9;
inline constexpr double kIntegralityTolerance = 1e-6;
inline constexpr double kAbsoluteGap = 1e-6;

enum class Sense { kMinimize, kMaximize };
enum class Relation { kLessEqual, kEqual, kGreaterEqual };
enum class VarType { kContinuous, kBinary };
enum class Status { kOptimal, kInfeasible, kUnbounded };

const char* to_string(Status s);

// Sparse linear form: (variable index, coefficient) pairs.
using LinearTerms = std::vector<std::pair<int, double>>;

struct Variable {
  std::string name;
  double lower = 0.0;
  double upper = kInfinity;
  VarType type = VarType::kContinuous;
};

struct Constraint {
  std::string name;
  LinearTerms terms;
  Relation relation = Relation::kLessEqual;
  double rhs = 0.0;
};

class LinearProgram {
 public:
  int add_variable(std::string name, double lower = 0.0, double upper = kInfinity,
                   VarType type = VarType::kContinuous);
  int add_binary(std::string name) {
    return add_variable(std::move(name), 0.0, 1.0, VarType::kBinary);
  }
  void add_constraint(LinearTerms terms, Relation relation, double rhs,
                      std::string name = {});
  void set_objective(Sense sense, LinearTerms terms, double offset = 0.0);
  void set_bounds(int var, double lower, double upper);

  std::size_t num_variables() const { return variables_.size(); }
  std::size_t num_constraints() const { return constraints_.size(); }
  const std::vector<Variable>& variables() const { return variables_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  const Variable& variable(int v) const { return variables_.at(v); }
  Sense sense() const { return sense_; }
  const LinearTerms& objective() const { return objective_; }
  double objective_offset() const { return offset_; }
  bool has_binaries() const;

  // Throws ValidationError: dangling indices, NaNs, bad binary bounds.
  void validate() const;

  // Largest violation of any constraint or bound by the given point.
  double max_violation(const std::vector<double>& x) const;
  double evaluate_objective(const std::vector<double>& x) const;

 private:
  std::vector<Variable> variables_;
  std::vector<Constraint> constraints_;
  Sense sense_ = Sense::kMinimize;
  LinearTerms objective_;
  double offset_ = 0.0;
};

struct Solution {
  Status status = Status::kInfeasible;
  double objective = 0.0;
  std::vector<double> values;  // indexed by variable
  // Shadow prices of the constraints in the program's own objective sense
  // (LP only; empty for MILP results).
  std::vector<double> duals;
  long iterations = 0;
  long nodes = 0;

  bool optimal() const { return status == Status::kOptimal; }
};

// Solves the continuous relaxation (integrality is ignored). Deterministic.
Solution solve_lp(const LinearProgram& program);

// Exact branch-and-bound over the binary variables.
Solution solve_milp(const LinearProgram& program);

// CPLEX-LP style text for cross-checking with external solvers.
std::string to_lp_format(const LinearProgram& program,
                         const std::string& title = "bwd");

}  // namespace bwd::opt

#endif  // BWD_OPTIMIZER_H_
