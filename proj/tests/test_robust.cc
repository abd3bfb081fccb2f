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

#include <algorithm>
#include <cmath>

#include "bwd/disagg.h"
#include "bwd/error.h"
#include "bwd/robust.h"
#include "support/generators.h"

using namespace bwd;

namespace {

using Pairs = std::vector<std::pair<std::size_t, std::size_t>>;

NecessaryRelation relation_of(std::size_t size, Pairs pairs) {
  NecessaryRelation r;
  r.size = size;
  r.delta.assign(size, std::vector<double>(size, 1.0));
  for (std::size_t i = 0; i < size; ++i) r.delta[i][i] = 0.0;
  for (const auto& [q, p] : pairs) r.delta[p][q] = -1.0;
  std::sort(pairs.begin(), pairs.end());
  r.pairs = pairs;
  return r;
}

// t = (1, 1) and z = (0.2, 0.2) fix the scale; the weights stay free, so
// a = (1, 0) and b = (0, 1) can take any order.
struct FreeWeights {
  PerformanceMatrix matrix{{{"x", Direction::kBenefit, 0.0, 1.0}, {"y", Direction::kBenefit, 0.0, 1.0}},
                           {{"t", {1.0, 1.0}}, {"a", {1.0, 0.0}}, {"b", {0.0, 1.0}}, {"z", {0.2, 0.2}}}};
  BreakpointGrid grid = build_grid(matrix, 1);
  ComparisonSet comparisons{{0, 3}, 0, 3, {Judgment::real(1), Judgment::real(5)},
                            {Judgment::real(5), Judgment::real(1)}};
};

void check_soundness(const PerformanceMatrix& matrix, const BreakpointGrid& grid,
                     const ComparisonSet& c) {
  const DisaggregationResult fit = solve(matrix, grid, c);
  const RobustnessReport rep = analyze_robustness(matrix, grid, c, fit.xi_star);
  REQUIRE(rep.relation.has_value());
  const NecessaryRelation& rel = *rep.relation;
  const std::size_t m = matrix.num_alternatives();
  // (a)
  for (const auto& r : rep.ranges) {
    CHECK(r.best_rank <= r.worst_rank);
    CHECK(r.best_rank >= 1);
    CHECK(r.worst_rank <= static_cast<int>(m));
  }
  // (b)
  for (const auto& [q, p] : rel.pairs) {
    CHECK(rep.ranges[q].best_rank <= rep.ranges[p].best_rank);
    CHECK(rep.ranges[q].worst_rank <= rep.ranges[p].worst_rank);
  }
  // (c)
  const std::vector<int> realized = realized_ranks(fit.values);
  for (std::size_t i = 0; i < m; ++i) {
    CHECK(rep.ranges[i].best_rank <= realized[i]);
    CHECK(realized[i] <= rep.ranges[i].worst_rank);
  }
  // (d)
  CHECK_NOTHROW(validate_order(rel));
  for (std::size_t p = 0; p < m; ++p) {
    CHECK_FALSE(rel.prefers(p, p));
    for (std::size_t q = 0; q < m; ++q) {
      CHECK_FALSE((rel.delta[p][q] < -kStrictnessTolerance && rel.delta[q][p] < -kStrictnessTolerance));
    }
  }
  // (e)
  for (std::size_t q = 0; q < m; ++q) {
    for (std::size_t p = 0; p < m; ++p) {
      if (pareto_dominates(matrix, q, p)) CHECK(rel.delta[p][q] <= 1e-9);
    }
  }
  // Tightening by the deltas does not change the ranges.
  const auto plain = extreme_ranks(matrix, grid, c, fit.xi_star);
  for (std::size_t i = 0; i < m; ++i) {
    CHECK(plain[i].best_rank == rep.ranges[i].best_rank);
    CHECK(plain[i].worst_rank == rep.ranges[i].worst_rank);
  }
}

}  // namespace

TEST_CASE("single alternative has rank one") {
  const PerformanceMatrix m({{"x", Direction::kBenefit, 0.0, 1.0}}, {{"only", {0.5}}});
  const ComparisonSet c({0, 1}, 0, 1, {Judgment::real(1), Judgment::real(2)},
                        {Judgment::real(2), Judgment::real(1)});
  const auto ranges = extreme_ranks(m, build_grid(m, 1), c, 0.0);
  REQUIRE(ranges.size() == 1);
  CHECK(ranges[0].best_rank == 1);
  CHECK(ranges[0].worst_rank == 1);
  CHECK_THROWS_AS(imprecision_index(ranges), ValidationError);
}

TEST_CASE("free weights leave incomparable alternatives unranked") {
  const FreeWeights f;
  const double xi = optimal_deviation(f.matrix, f.grid, f.comparisons);
  CHECK(xi <= 1e-9);
  const RobustnessReport rep = analyze_robustness(f.matrix, f.grid, f.comparisons, xi);
  REQUIRE(rep.ranges.size() == 4);
  CHECK(rep.ranges[0].best_rank == 1);
  CHECK(rep.ranges[0].worst_rank == 2);
  CHECK(rep.ranges[1].best_rank == 1);
  CHECK(rep.ranges[1].worst_rank == 4);
  CHECK(rep.ranges[2].best_rank == 1);
  CHECK(rep.ranges[2].worst_rank == 4);
  CHECK(rep.ranges[3].best_rank == 3);
  CHECK(rep.ranges[3].worst_rank == 4);
  REQUIRE(rep.imprecision.has_value());
  CHECK(*rep.imprecision == doctest::Approx(2.0 / 3.0));
  REQUIRE(rep.relation.has_value());
  CHECK(rep.relation->pairs == Pairs{{0, 3}});
  CHECK_FALSE(rep.relation->prefers(1, 2));
  CHECK_FALSE(rep.relation->prefers(2, 1));
  CHECK(rep.hasse_edges == Pairs{{0, 3}});
}

TEST_CASE("a unique exact model gives a total order") {
  const PerformanceMatrix m({{"x", Direction::kBenefit, 0.0, 4.0}},
                            {{"a", {4.0}}, {"b", {3.0}}, {"c", {2.0}}, {"d", {1.0}}});
  const auto grid = build_grid(m, 1);
  const ComparisonSet c({0, 3}, 0, 3, {Judgment::real(1), Judgment::real(4)},
                        {Judgment::real(4), Judgment::real(1)});
  const double xi = optimal_deviation(m, grid, c);
  CHECK(xi <= 1e-9);
  const RobustnessReport rep = analyze_robustness(m, grid, c, xi);
  for (int i = 0; i < 4; ++i) {
    CHECK(rep.ranges[i].best_rank == i + 1);
    CHECK(rep.ranges[i].worst_rank == i + 1);
  }
  CHECK(*rep.imprecision == 0.0);
  CHECK(rep.relation->pairs.size() == 6);
  CHECK(rep.hasse_edges == Pairs{{0, 1}, {1, 2}, {2, 3}});
}

TEST_CASE("imprecision index examples") {
  std::vector<RankRange> exact(3);
  for (int i = 0; i < 3; ++i) exact[i] = {i + 1, i + 1, 0, 0};
  CHECK(imprecision_index(exact) == 0.0);
  std::vector<RankRange> open(3, RankRange{1, 3, 0, 0});
  CHECK(imprecision_index(open) == 1.0);
  std::vector<RankRange> mixed = {{1, 2, 0, 0}, {1, 2, 0, 0}, {3, 3, 0, 0}};
  CHECK(imprecision_index(mixed) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("hasse diagram examples") {
  CHECK(hasse(relation_of(3, {})).empty());
  CHECK(hasse(relation_of(3, {{0, 1}, {0, 2}, {1, 2}})) == Pairs{{0, 1}, {1, 2}});
  CHECK(hasse(relation_of(4, {{0, 1}, {0, 2}, {0, 3}, {1, 3}, {2, 3}})) ==
        Pairs{{0, 1}, {0, 2}, {1, 3}, {2, 3}});
  const std::string dot = hasse_dot({{0, 1}}, {"a", "b \"x\"", "c"});
  CHECK(dot.rfind("digraph necessary {", 0) == 0);
  CHECK(dot.find("\"a\" -> \"b \\\"x\\\"\";") != std::string::npos);
  CHECK(dot.find("\"c\";") != std::string::npos);
  CHECK(dot.back() == '\n');
  std::vector<RankRange> ranges = {{1, 2, 0, 0}, {2, 2, 0, 0}};
  CHECK(rank_ranges_csv(ranges, {"a", "b"}) == "id,best_rank,worst_rank\na,1,2\nb,2,2\n");
}

TEST_CASE("order validation rejects broken relations") {
  CHECK_NOTHROW(validate_order(relation_of(3, {{0, 1}, {1, 2}, {0, 2}})));
  CHECK_THROWS_AS(validate_order(relation_of(3, {{0, 1}, {1, 2}})), InternalError);
  CHECK_THROWS_AS(validate_order(relation_of(2, {{0, 1}, {1, 0}})), InternalError);
  CHECK_THROWS_AS(validate_order(relation_of(2, {{0, 0}})), InternalError);
}

TEST_CASE("property: robustness soundness") {
  testing::Rng rng(17);
  for (int t = 0; t < 40; ++t) {
    const int m = testing::uniform_int(rng, 2, 8);
    const auto matrix = testing::random_matrix(rng, m, testing::uniform_int(rng, 1, 3), 6);
    const auto grid = build_grid(matrix, testing::uniform_int(rng, 1, 2));
    ComparisonSet c = testing::random_comparisons(rng, m, testing::uniform_int(rng, 2, std::min(m, 5)), t % 2);
    if (t % 3 == 0) c = testing::widen(rng, c);
    check_soundness(matrix, grid, c);
  }
}

TEST_CASE("property: soundness on recoverable instances") {
  testing::Rng rng(18);
  int done = 0;
  while (done < 20) {
    const int m = testing::uniform_int(rng, 3, 8);
    const auto matrix = testing::random_matrix(rng, m, testing::uniform_int(rng, 1, 3));
    const auto grid = build_grid(matrix, testing::uniform_int(rng, 1, 2));
    const auto values = testing::random_model(rng, grid).evaluate_all(matrix);
    const auto c = testing::exact_comparisons(rng, values, testing::uniform_int(rng, 2, std::min(m, 4)));
    if (!c) continue;
    ++done;
    check_soundness(matrix, grid, *c);
  }
}

TEST_CASE("property: widening with an exact fit never sharpens the analysis") {
  testing::Rng rng(19);
  int done = 0;
  while (done < 20) {
    const int m = testing::uniform_int(rng, 3, 8);
    const auto matrix = testing::random_matrix(rng, m, testing::uniform_int(rng, 1, 3));
    const auto grid = build_grid(matrix, testing::uniform_int(rng, 1, 2));
    const auto values = testing::random_model(rng, grid).evaluate_all(matrix);
    const auto c = testing::exact_comparisons(rng, values, testing::uniform_int(rng, 2, std::min(m, 4)));
    if (!c) continue;
    ++done;
    const double xi = optimal_deviation(matrix, grid, *c);
    REQUIRE(xi <= 1e-7);
    const ComparisonSet wide = testing::widen(rng, *c);
    const double xi_i = optimal_deviation(matrix, grid, wide);
    const RobustnessReport sharp = analyze_robustness(matrix, grid, *c, xi);
    const RobustnessReport loose = analyze_robustness(matrix, grid, wide, xi_i);
    for (const auto& pair : loose.relation->pairs) {
      CHECK(std::binary_search(sharp.relation->pairs.begin(), sharp.relation->pairs.end(), pair));
    }
    for (int i = 0; i < m; ++i) {
      CHECK(loose.ranges[i].best_rank <= sharp.ranges[i].best_rank);
      CHECK(loose.ranges[i].worst_rank >= sharp.ranges[i].worst_rank);
    }
  }
}
