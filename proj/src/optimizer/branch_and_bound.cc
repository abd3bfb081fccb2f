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

// Best-bound branch-and-bound over binary variables. Each node fixes a subset
// of binaries through their bounds and solves the LP relaxation from scratch.

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include "bwd/error.h"
#include "bwd/optimizer.h"

namespace bwd::opt {
namespace {

struct Node {
  double bound;  // relaxation objective in minimization form
  long id;
  std::vector<std::pair<int, double>> fixings;  // (variable, value)
};

struct WorseNode {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.id > b.id;
  }
};

// True when the objective only involves binaries with integer coefficients,
// so every feasible objective value is an integer and bounds can be rounded.
bool integral_objective(const LinearProgram& p) {
  for (const auto& [var, coef] : p.objective()) {
    if (p.variable(var).type != VarType::kBinary) return false;
    if (coef != std::round(coef)) return false;
  }
  return p.objective_offset() == std::round(p.objective_offset());
}

}  // namespace

Solution solve_milp(const LinearProgram& program) {
  program.validate();
  if (!program.has_binaries()) return solve_lp(program);

  const double sense = program.sense() == Sense::kMaximize ? -1.0 : 1.0;
  const bool integral = integral_objective(program);
  // In minimization form a node can only improve on the incumbent if its
  // bound is below incumbent - gap (or below incumbent - 1 + gap when all
  // objective values are integers).
  auto can_improve = [&](double bound, double incumbent) {
    if (integral) return std::ceil(bound - kAbsoluteGap) <= incumbent - 1.0 + 0.5;
    return bound < incumbent - kAbsoluteGap;
  };

  std::vector<int> binaries;
  for (std::size_t v = 0; v < program.num_variables(); ++v) {
    if (program.variable(static_cast<int>(v)).type == VarType::kBinary) {
      binaries.push_back(static_cast<int>(v));
    }
  }

  LinearProgram work = program;
  auto relax = [&](const Node& node) {
    for (int v : binaries) {
      work.set_bounds(v, program.variable(v).lower, program.variable(v).upper);
    }
    for (const auto& [v, value] : node.fixings) work.set_bounds(v, value, value);
    return solve_lp(work);
  };

  Solution best;
  best.status = Status::kInfeasible;
  double incumbent = kInfinity;
  long nodes = 0;
  long iterations = 0;
  long next_id = 0;
  bool unbounded_relaxation = false;

  std::priority_queue<Node, std::vector<Node>, WorseNode> open;
  open.push({-kInfinity, next_id++, {}});
  while (!open.empty()) {
    Node node = open.top();
    open.pop();
    if (incumbent < kInfinity && !can_improve(node.bound, incumbent)) continue;

    Solution relaxed = relax(node);
    ++nodes;
    iterations += relaxed.iterations;
    if (relaxed.status == Status::kInfeasible) continue;
    if (relaxed.status == Status::kUnbounded) {
      unbounded_relaxation = true;
      break;
    }
    const double bound = sense * relaxed.objective;
    if (incumbent < kInfinity && !can_improve(bound, incumbent)) continue;

    // Most fractional binary; ties go to the lowest index.
    int branch = -1;
    double most = kIntegralityTolerance;
    for (int v : binaries) {
      const double x = relaxed.values[v];
      const double frac = std::min(x - std::floor(x), std::ceil(x) - x);
      if (frac > most + 1e-12) {
        most = frac;
        branch = v;
      }
    }
    if (branch < 0) {
      for (int v : binaries) relaxed.values[v] = std::round(relaxed.values[v]);
      if (program.max_violation(relaxed.values) > kFeasibilityTolerance) {
        // Rounding within the integrality tolerance broke feasibility: pin
        // every binary and re-solve the continuous part.
        Node pinned = node;
        pinned.fixings.clear();
        for (int v : binaries) pinned.fixings.emplace_back(v, relaxed.values[v]);
        relaxed = relax(pinned);
        ++nodes;
        if (!relaxed.optimal()) continue;
      }
      const double value = sense * program.evaluate_objective(relaxed.values);
      if (value < incumbent) {
        incumbent = value;
        best = relaxed;
        best.duals.clear();
      }
      continue;
    }
    for (double fix : {1.0, 0.0}) {
      Node child{bound, next_id++, node.fixings};
      child.fixings.emplace_back(branch, fix);
      open.push(std::move(child));
    }
  }

  if (unbounded_relaxation) {
    // Binaries are bounded, so an unbounded relaxation means the continuous
    // part is unbounded for some fixing; report it as such.
    best = Solution{};
    best.status = Status::kUnbounded;
  }
  if (best.optimal()) best.objective = program.evaluate_objective(best.values);
  best.nodes = nodes;
  best.iterations = iterations;
  return best;
}

}  // namespace bwd::opt
