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

// Acceptance runner: one PASS/FAIL/SKIP line per primary criterion. Exits
// nonzero only when a criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>

#include "bwd/consistency.h"
#include "bwd/disagg.h"
#include "bwd/error.h"
#include "bwd/io.h"
#include "bwd/refset.h"
#include "bwd/robust.h"
#include "support/generators.h"
#include "support/oracles.h"

using namespace bwd;

namespace {

enum class Outcome { kPass, kFail, kSkip };

struct Result {
  Outcome outcome = Outcome::kPass;
  std::string detail;
};

// Collects failed expectations without stopping the criterion.
class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    if (!ok) ++failed_;
  }
  Result result(const std::string& summary) const {
    if (failed_ == 0) return {Outcome::kPass, summary};
    std::string d = std::to_string(failed_) + "/" + std::to_string(checks_) + " checks failed";
    for (const auto& f : failures_) d += "; " + f;
    return {Outcome::kFail, d};
  }

 private:
  int checks_ = 0;
  int failed_ = 0;
  std::vector<std::string> failures_;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

ComparisonSet five(const std::vector<Judgment>& bo, const std::vector<Judgment>& ow,
                   std::vector<std::size_t> ref = {0, 1, 2, 3, 4}) {
  const std::size_t best = ref[0];
  const std::size_t worst = ref[4];
  return ComparisonSet(std::move(ref), best, worst, bo, ow);
}

std::vector<Judgment> reals(std::initializer_list<double> v) {
  std::vector<Judgment> out;
  for (double a : v) out.push_back(Judgment::real(a));
  return out;
}

Result consistency_reproduction() {
  Checker c;
  const ComparisonSet t1 = five(reals({1, 3, 4, 5, 8}), reals({8, 5, 3, 4, 1}));
  const ComparisonSet t4 = five(reals({1, 3, 4, 4, 8}), reals({8, 5, 3, 3, 1}));
  const OrdinalConsistency o1 = ordinal_ratio(t1);
  c.expect(o1.ratio == 0.2, "OR(reversal) = " + num(o1.ratio));
  c.expect(o1.per_alternative == std::vector<double>{0, 0, 0.2, 0.2, 0}, "OR_i(reversal)");
  std::vector<std::vector<double>> expected(5, std::vector<double>(5, 0.0));
  expected[2][3] = expected[3][2] = 1.0;
  c.expect(o1.violations == expected, "violation table");
  const double cr1 = cardinal_ratio(t1).ratio;
  c.expect(std::abs(cr1 - 0.214) <= 5e-4, "CR(reversal) = " + num(cr1));
  c.expect(ordinal_ratio(t4).ratio == 0.0, "OR(revised)");
  const double cr4 = cardinal_ratio(t4).ratio;
  c.expect(cr4 == 0.125, "CR(revised) = " + num(cr4));
  const ThresholdTable table = ThresholdTable::defaults();
  const auto thr = table.lookup(5, 8.0);
  c.expect(thr && *thr == 0.284, "threshold (5, 8)");
  c.expect(analyze_consistency(t1, table).verdicts.cardinal == Verdict::kPass, "reversal passes");
  c.expect(analyze_consistency(t4, table).verdicts.cardinal == Verdict::kPass, "revised passes");
  return c.result("OR 0.2, CR " + num(cr1) + "; OR 0, CR " + num(cr4));
}

std::string case_study_path() {
  if (const char* p = std::getenv("BWD_LPI_MATRIX")) return p;
  const char* dir = std::getenv("BWD_DATA_DIR");
  const std::filesystem::path base = dir ? dir : "data";
  return (base / "lpi2018_europe.csv").string();
}

Result case_study() {
  const std::string path = case_study_path();
  if (!std::filesystem::exists(path)) {
    return {Outcome::kSkip, "LPI 2018 European matrix not found at " + path +
                                " (set BWD_LPI_MATRIX)"};
  }
  Checker c;
  const PerformanceMatrix m = read_matrix_csv(path);
  const BreakpointGrid grid = build_grid(m, 2);
  std::vector<std::size_t> ref;
  for (const char* id : {"Estonia", "Hungary", "Latvia", "Greece", "Moldova"}) {
    ref.push_back(m.require_index(id));
  }
  const ComparisonSet real = five(reals({1, 3, 4, 4, 8}), reals({8, 5, 3, 3, 1}), ref);
  auto r = [](double lo, double hi) { return Judgment::range(lo, hi); };
  const ComparisonSet iv =
      five({r(1, 1), r(2, 3), r(3, 4), r(4, 5), r(7, 9)},
           {r(7, 9), r(4, 5), r(2, 4), r(3, 4), r(1, 1)}, ref);

  const auto start = std::chrono::steady_clock::now();
  const double xi = optimal_deviation(m, grid, real);
  const double xi_i = optimal_deviation(m, grid, iv);
  c.expect(std::abs(xi - 0.030689) <= 1e-5, "xi* = " + num(xi));
  c.expect(std::abs(xi_i) <= 1e-9, "xi*_I = " + num(xi_i));
  const RobustnessReport rb = analyze_robustness(m, grid, real, xi);
  const RobustnessReport ri = analyze_robustness(m, grid, iv, xi_i);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.expect(std::abs(*rb.imprecision - 0.00135) <= 1e-4, "U(BWD) = " + num(*rb.imprecision));
  c.expect(std::abs(*ri.imprecision - 0.05938) <= 1e-4, "U(I-BWD) = " + num(*ri.imprecision));
  std::vector<std::string> open;
  for (std::size_t i = 0; i < m.num_alternatives(); ++i) {
    if (rb.ranges[i].worst_rank != rb.ranges[i].best_rank) open.push_back(m.id(i));
  }
  std::sort(open.begin(), open.end());
  c.expect(open == std::vector<std::string>{"Greece", "Slovenia"}, "alternatives with open ranks");
  if (open.size() == 2) {
    const auto& a = rb.ranges[m.require_index(open[0])];
    const auto& b = rb.ranges[m.require_index(open[1])];
    c.expect(a.best_rank == b.best_rank && a.worst_rank == b.worst_rank &&
                 a.worst_rank == a.best_rank + 1,
             "Greece and Slovenia share two adjacent ranks");
  }
  c.expect(seconds < 60.0, "runtime " + num(seconds) + " s");
  return c.result("xi* " + num(xi) + ", U " + num(*rb.imprecision) + " / " +
                  num(*ri.imprecision) + ", " + num(seconds) + " s");
}

Result generate_and_recover() {
  Checker c;
  testing::Rng rng(20260101);
  int solved = 0;
  double worst = 0.0;
  const auto start = std::chrono::steady_clock::now();
  while (solved < 100) {
    const int m = testing::uniform_int(rng, 3, 12);
    const auto matrix = testing::random_matrix(rng, m, testing::uniform_int(rng, 1, 4));
    const int s = testing::uniform_int(rng, 1, 3);
    const auto grid = build_grid(matrix, s);
    const auto values = testing::random_model(rng, grid).evaluate_all(matrix);
    const auto cmp = testing::covering_exact_comparisons(
        rng, matrix, grid, values, testing::uniform_int(rng, std::min(m, s + 1), std::min(m, 8)));
    if (!cmp) continue;
    ++solved;
    const DisaggregationResult r = solve_bwd(matrix, grid, *cmp);
    worst = std::max(worst, r.xi_star);
    c.expect(r.xi_star <= 1e-7, "xi* = " + num(r.xi_star));
    for (std::size_t a : cmp->reference()) {
      for (std::size_t b : cmp->reference()) {
        if (values[a] > values[b] + 1e-6) c.expect(r.values[a] > r.values[b], "reference order");
      }
    }
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.expect(seconds < 30.0, "runtime " + num(seconds) + " s");
  return c.result("100 instances, max xi* " + num(worst) + ", " + num(seconds) + " s");
}

Result interval_relaxation() {
  Checker c;
  testing::Rng rng(20260102);
  double gap = -1.0;
  for (int t = 0; t < 100; ++t) {
    const int m = testing::uniform_int(rng, 4, 10);
    const auto matrix = testing::random_matrix(rng, m, testing::uniform_int(rng, 1, 4));
    const auto grid = build_grid(matrix, testing::uniform_int(rng, 1, 3));
    const ComparisonSet real =
        testing::random_comparisons(rng, m, testing::uniform_int(rng, 2, std::min(m, 6)), t % 2);
    const ComparisonSet wide = testing::widen(rng, real);
    const double xi = optimal_deviation(matrix, grid, real);
    const double xi_i = optimal_deviation(matrix, grid, wide);
    gap = std::max(gap, xi_i - xi);
    c.expect(xi_i <= xi + 1e-9, "xi*_I " + num(xi_i) + " > xi* " + num(xi));
  }
  return c.result("100 instances, max xi*_I - xi* = " + num(gap));
}

Result refset_brute_force() {
  Checker c;
  testing::Rng rng(20260103);
  int feasible = 0;
  for (int t = 0; t < 200; ++t) {
    const int m = testing::uniform_int(rng, 1, 10);
    const auto matrix = testing::random_matrix(rng, m, testing::uniform_int(rng, 1, 3), 6);
    const auto cov = coverage_array(matrix, build_grid(matrix, testing::uniform_int(rng, 1, 3)));
    const auto dom = dominance_pairs(matrix);
    const int b = testing::uniform_int(rng, 1, 2);
    const auto sel = select_reference_set(cov, dom, b);
    const auto brute = testing::brute_force(cov, dom, b, {});
    c.expect(sel.feasible == brute.has_value(), "feasibility differs");
    if (!sel.feasible || !brute) continue;
    ++feasible;
    c.expect(sel.selected.size() == brute->size(), "cardinality differs");
    c.expect(testing::covers_b(cov, sel.selected, b), "not b-covering");
    c.expect(testing::dominance_free(dom, sel.selected), "not dominance-free");
  }
  return c.result("200 instances, " + std::to_string(feasible) + " feasible");
}

Result robustness_soundness() {
  Checker c;
  testing::Rng rng(20260104);
  for (int t = 0; t < 30; ++t) {
    const int m = testing::uniform_int(rng, 2, 8);
    const auto matrix = testing::random_matrix(rng, m, testing::uniform_int(rng, 1, 3), 6);
    const auto grid = build_grid(matrix, testing::uniform_int(rng, 1, 2));
    ComparisonSet cmp =
        testing::random_comparisons(rng, m, testing::uniform_int(rng, 2, std::min(m, 5)), t % 2);
    if (t % 3 == 0) cmp = testing::widen(rng, cmp);
    const DisaggregationResult fit = solve(matrix, grid, cmp);
    RobustnessReport rep;
    try {
      rep = analyze_robustness(matrix, grid, cmp, fit.xi_star);
    } catch (const InternalError& e) {
      c.expect(false, e.what());
      continue;
    }
    const NecessaryRelation& rel = *rep.relation;
    const auto realized = realized_ranks(fit.values);
    for (int i = 0; i < m; ++i) {
      c.expect(rep.ranges[i].best_rank <= rep.ranges[i].worst_rank, "(a)");
      c.expect(rep.ranges[i].best_rank <= realized[i] && realized[i] <= rep.ranges[i].worst_rank,
               "(c)");
    }
    for (const auto& [q, p] : rel.pairs) {
      c.expect(rep.ranges[q].best_rank <= rep.ranges[p].best_rank &&
                   rep.ranges[q].worst_rank <= rep.ranges[p].worst_rank,
               "(b)");
    }
    for (int p = 0; p < m; ++p) {
      c.expect(!rel.prefers(p, p), "(d) irreflexive");
      for (int q = 0; q < m; ++q) {
        c.expect(!(rel.prefers(q, p) && rel.prefers(p, q)), "(d) asymmetric");
        for (int r = 0; r < m; ++r) {
          if (rel.prefers(q, p) && rel.prefers(p, r)) c.expect(rel.prefers(q, r), "(d) transitive");
        }
        if (pareto_dominates(matrix, q, p)) c.expect(rel.delta[p][q] <= 1e-9, "(e)");
      }
    }
  }
  return c.result("30 instances, properties (a) to (e)");
}

Result solver_correctness() {
  Checker c;
  testing::Rng rng(20260105);
  for (int t = 0; t < 100; ++t) {
    const auto p = testing::random_milp(rng, testing::uniform_int(rng, 1, 12),
                                        testing::uniform_int(rng, 0, 2));
    const testing::Enumerated e = testing::enumerate(p);
    const opt::Solution s = opt::solve_milp(p);
    c.expect(s.optimal() == e.feasible, "MILP feasibility differs");
    if (s.optimal() && e.feasible) c.expect(std::abs(s.objective - e.best) <= 1e-6, "MILP optimum");
  }
  for (int t = 0; t < 100; ++t) {
    const testing::PrimalDual pd = testing::random_primal_dual(rng);
    const opt::Solution ps = opt::solve_lp(pd.primal);
    const opt::Solution ds = opt::solve_lp(pd.dual);
    c.expect(ps.optimal() && ds.optimal(), "primal or dual not solved");
    if (ps.optimal() && ds.optimal()) {
      c.expect(std::abs(ps.objective - ds.objective) <= 1e-6, "duality gap");
    }
  }
  return c.result("100 MILPs vs enumeration, 100 primal/dual pairs");
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Result()>> criteria[] = {
      {"consistency-reproduction", consistency_reproduction},
      {"case-study-pipeline", case_study},
      {"generate-and-recover", generate_and_recover},
      {"interval-relaxation", interval_relaxation},
      {"refset-vs-brute-force", refset_brute_force},
      {"robustness-soundness", robustness_soundness},
      {"solver-correctness", solver_correctness},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Result r;
    try {
      r = run();
    } catch (const std::exception& e) {
      r = {Outcome::kFail, std::string("exception: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const char* tag = r.outcome == Outcome::kPass ? "PASS" : r.outcome == Outcome::kFail ? "FAIL" : "SKIP";
    if (r.outcome == Outcome::kFail) ++failed;
    std::printf("%s %s: %s [%.2f s]\n", tag, name, r.detail.c_str(), s);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
