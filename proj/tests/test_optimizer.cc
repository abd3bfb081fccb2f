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

#include <doctest.h>

#include <cmath>

#include "bwd/error.h"
#include "bwd/optimizer.h"
#include "support/generators.h"
#include "support/oracles.h"

using namespace bwd;
using namespace bwd::opt;

TEST_CASE("lp examples") {
  {
    LinearProgram p;
    const int x = p.add_variable("x", -kInfinity, kInfinity);
    p.add_constraint({{x, 1.0}}, Relation::kGreaterEqual, 3.0);
    p.set_objective(Sense::kMinimize, {{x, 1.0}});
    const Solution s = solve_lp(p);
    REQUIRE(s.optimal());
    CHECK(s.objective == doctest::Approx(3.0));
  }
  {
    LinearProgram p;
    const int x = p.add_variable("x");
    const int y = p.add_variable("y");
    p.add_constraint({{x, 1.0}, {y, 1.0}}, Relation::kLessEqual, 1.0);
    p.set_objective(Sense::kMaximize, {{x, 1.0}, {y, 1.0}});
    const Solution s = solve_lp(p);
    REQUIRE(s.optimal());
    CHECK(s.objective == doctest::Approx(1.0));
  }
  {
    LinearProgram p;
    const int x = p.add_variable("x");
    p.add_constraint({{x, 1.0}}, Relation::kLessEqual, -1.0);
    p.set_objective(Sense::kMinimize, {});
    CHECK(solve_lp(p).status == Status::kInfeasible);
  }
  {
    LinearProgram p;
    const int x = p.add_variable("x");
    p.set_objective(Sense::kMaximize, {{x, 1.0}});
    CHECK(solve_lp(p).status == Status::kUnbounded);
  }
  {
    // bounds on both sides, negative lower bound, fixed variable
    LinearProgram p;
    const int x = p.add_variable("x", -2.0, 5.0);
    const int y = p.add_variable("y", 1.5, 1.5);
    const int z = p.add_variable("z", -kInfinity, 4.0);
    p.add_constraint({{x, 1.0}, {y, 1.0}, {z, 1.0}}, Relation::kEqual, 3.0);
    p.set_objective(Sense::kMinimize, {{x, 1.0}, {z, -2.0}}, 10.0);
    const Solution s = solve_lp(p);
    REQUIRE(s.optimal());
    CHECK(s.values[x] == doctest::Approx(-2.0));
    CHECK(s.values[y] == doctest::Approx(1.5));
    CHECK(s.values[z] == doctest::Approx(3.5));
    CHECK(s.objective == doctest::Approx(10.0 - 2.0 - 7.0));
  }
}

TEST_CASE("milp examples") {
  {
    LinearProgram p;
    const int z = p.add_binary("z");
    p.add_constraint({{z, 1.0}}, Relation::kLessEqual, 0.5);
    p.set_objective(Sense::kMaximize, {{z, 1.0}});
    const Solution s = solve_milp(p);
    REQUIRE(s.optimal());
    CHECK(s.values[z] == 0.0);
    CHECK(s.objective == 0.0);
  }
  {
    // sets {1}, {2}, {1,2} covering elements 1 and 2
    LinearProgram p;
    const int a = p.add_binary("a");
    const int b = p.add_binary("b");
    const int c = p.add_binary("c");
    p.add_constraint({{a, 1.0}, {c, 1.0}}, Relation::kGreaterEqual, 1.0);
    p.add_constraint({{b, 1.0}, {c, 1.0}}, Relation::kGreaterEqual, 1.0);
    p.set_objective(Sense::kMinimize, {{a, 1.0}, {b, 1.0}, {c, 1.0}});
    const Solution s = solve_milp(p);
    REQUIRE(s.optimal());
    CHECK(s.objective == doctest::Approx(1.0));
    CHECK(s.values[c] == 1.0);
  }
  {
    LinearProgram p;
    const int a = p.add_binary("a");
    const int b = p.add_binary("b");
    p.add_constraint({{a, 1.0}, {b, 1.0}}, Relation::kLessEqual, 1.0);
    p.set_objective(Sense::kMaximize, {{a, 2.0}, {b, 3.0}});
    const Solution s = solve_milp(p);
    REQUIRE(s.optimal());
    CHECK(s.objective == doctest::Approx(3.0));
  }
  {
    LinearProgram p;
    const int a = p.add_binary("a");
    p.add_constraint({{a, 2.0}}, Relation::kEqual, 1.0);
    p.set_objective(Sense::kMaximize, {{a, 1.0}});
    CHECK(solve_milp(p).status == Status::kInfeasible);
  }
}

TEST_CASE("validation rejects malformed programs") {
  LinearProgram p;
  p.add_variable("x");
  CHECK_THROWS_AS(p.add_constraint({{3, 1.0}}, Relation::kLessEqual, 1.0), ValidationError);
  CHECK_THROWS_AS(p.add_variable("y", 2.0, 1.0), ValidationError);
  CHECK_THROWS_AS(p.add_variable("b", 0.0, 2.0, VarType::kBinary), ValidationError);
}


TEST_CASE("property: milp equals exhaustive enumeration") {
  testing::Rng rng(2024);
  int feasible = 0;
  for (int t = 0; t < 150; ++t) {
    const int bins = testing::uniform_int(rng, 1, 12);
    const int cont = testing::uniform_int(rng, 0, 2);
    const LinearProgram p = testing::random_milp(rng, bins, cont);
    const testing::Enumerated e = testing::enumerate(p);
    const Solution s = solve_milp(p);
    CHECK(s.status != Status::kUnbounded);
    CHECK(s.optimal() == e.feasible);
    if (s.optimal() && e.feasible) {
      ++feasible;
      CHECK(std::abs(s.objective - e.best) <= 1e-6);
      CHECK(p.max_violation(s.values) <= 1e-7);
      for (std::size_t v = 0; v < p.num_variables(); ++v) {
        if (p.variable(static_cast<int>(v)).type == VarType::kBinary) {
          CHECK(std::min(std::abs(s.values[v]), std::abs(s.values[v] - 1.0)) <= 1e-6);
        }
      }
    }
  }
  CHECK(feasible > 40);
}

TEST_CASE("property: lp strong duality") {
  testing::Rng rng(77);
  for (int t = 0; t < 120; ++t) {
    const testing::PrimalDual pd = testing::random_primal_dual(rng);
    const LinearProgram& primal = pd.primal;
    const LinearProgram& dual = pd.dual;
    const std::vector<double>& b = pd.b;
    const int m = static_cast<int>(b.size());
    const Solution ps = solve_lp(primal);
    const Solution ds = solve_lp(dual);
    REQUIRE(ps.optimal());
    REQUIRE(ds.optimal());
    CHECK(std::abs(ps.objective - ds.objective) <= 1e-6);
    CHECK(primal.max_violation(ps.values) <= 1e-7);
    CHECK(dual.max_violation(ds.values) <= 1e-7);
    // Reported shadow prices price the primal at its optimum.
    REQUIRE(ps.duals.size() == static_cast<std::size_t>(m));
    double by = 0.0;
    for (int i = 0; i < m; ++i) by += b[i] * ps.duals[i];
    CHECK(std::abs(by - ps.objective) <= 1e-6);
  }
}

TEST_CASE("determinism") {
  testing::Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    const LinearProgram p = testing::random_milp(rng, 8, 2);
    const Solution a = solve_milp(p);
    const Solution b = solve_milp(p);
    CHECK(a.status == b.status);
    CHECK(a.objective == b.objective);
    CHECK(a.values == b.values);
  }
}

TEST_CASE("lp format dump") {
  LinearProgram p;
  const int x = p.add_variable("x", 0.0, 4.0);
  const int z = p.add_binary("z");
  p.add_constraint({{x, 1.0}, {z, -2.0}}, Relation::kGreaterEqual, 1.0, "row one");
  p.set_objective(Sense::kMaximize, {{x, 1.0}, {z, 3.0}});
  const std::string text = to_lp_format(p, "t");
  CHECK(text.find("Maximize") != std::string::npos);
  CHECK(text.find("Subject To") != std::string::npos);
  CHECK(text.find("Binaries") != std::string::npos);
  CHECK(text.find("row_one") != std::string::npos);
  CHECK(text.find(">= 1") != std::string::npos);
  CHECK(text.rfind("End") != std::string::npos);
}
