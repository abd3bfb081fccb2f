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

#include "bwd/robust.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bwd/error.h"
#include "bwd/optimizer.h"
#include "bwd/parallel.h"
#include "bwd/value_program.h"

namespace bwd {

NecessaryRelation necessary_relation(const PerformanceMatrix& matrix,
                                     const BreakpointGrid& grid,
                                     const ComparisonSet& comparisons, double xi_star) {
  const ValueProgram base = ValueProgram::optimal_set(matrix, grid, comparisons, xi_star);
  const std::size_t m = matrix.num_alternatives();
  NecessaryRelation rel;
  rel.size = m;
  rel.delta.assign(m, std::vector<double>(m, 0.0));
  std::vector<std::pair<std::size_t, std::size_t>> jobs;
  for (std::size_t p = 0; p < m; ++p) {
    for (std::size_t q = 0; q < m; ++q) {
      if (p != q) jobs.emplace_back(p, q);
    }
  }
  parallel_for(jobs.size(), [&](std::size_t k) {
    const auto [p, q] = jobs[k];
    opt::LinearProgram lp = base.lp();
    lp.set_objective(opt::Sense::kMaximize, base.difference(p, q));
    const opt::Solution sol = opt::solve_lp(lp);
    if (!sol.optimal()) {
      throw InternalError(std::string("value-difference program ended ") +
                          opt::to_string(sol.status));
    }
    rel.delta[p][q] = sol.objective;
  });
  for (std::size_t q = 0; q < m; ++q) {
    for (std::size_t p = 0; p < m; ++p) {
      if (p != q && rel.prefers(q, p)) rel.pairs.emplace_back(q, p);
    }
  }
  validate_order(rel);
  return rel;
}

void validate_order(const NecessaryRelation& relation) {
  const std::size_t m = relation.size;
  for (std::size_t a = 0; a < m; ++a) {
    if (relation.prefers(a, a)) throw InternalError("necessary relation is reflexive");
    for (std::size_t b = 0; b < m; ++b) {
      if (a == b || !relation.prefers(a, b)) continue;
      if (relation.prefers(b, a)) throw InternalError("necessary relation is not asymmetric");
      for (std::size_t c = 0; c < m; ++c) {
        if (relation.prefers(b, c) && !relation.prefers(a, c)) {
          throw InternalError("necessary relation is not transitive");
        }
      }
    }
  }
}

namespace {

// Largest number of h != i with V(h) - V(i) <= eps (sign = +1) or
// V(i) - V(h) <= eps (sign = -1) in one optimal model.
int count_extreme(const ValueProgram& base, std::size_t i, int sign,
                  const NecessaryRelation* relation) {
  const std::size_t m = base.num_alternatives();
  opt::LinearProgram lp = base.lp();
  opt::LinearTerms objective;
  int fixed = 0;
  for (std::size_t h = 0; h < m; ++h) {
    if (h == i) continue;
    double big_m = 1.0;
    if (relation != nullptr) {
      const double hi = sign > 0 ? relation->delta[h][i] : relation->delta[i][h];
      const double lo = sign > 0 ? -relation->delta[i][h] : -relation->delta[h][i];
      if (hi <= kRankEpsilon) {
        ++fixed;
        continue;
      }
      if (lo > kRankEpsilon) continue;
      big_m = std::max(hi, kRankEpsilon) + opt::kFeasibilityTolerance;
    }
    const int z = lp.add_binary("z_" + std::to_string(h));
    // diff + (M - eps) z <= M, so z = 1 forces diff <= eps.
    opt::LinearTerms row = sign > 0 ? base.difference(h, i) : base.difference(i, h);
    row.emplace_back(z, big_m - kRankEpsilon);
    lp.add_constraint(std::move(row), opt::Relation::kLessEqual, big_m,
                      "link_" + std::to_string(h));
    objective.emplace_back(z, 1.0);
  }
  if (objective.empty()) return fixed;
  lp.set_objective(opt::Sense::kMaximize, std::move(objective));
  const opt::Solution sol = opt::solve_milp(lp);
  if (!sol.optimal()) {
    throw InternalError(std::string("rank program ended ") + opt::to_string(sol.status));
  }
  return fixed + static_cast<int>(std::lround(sol.objective));
}

}  // namespace

std::vector<RankRange> extreme_ranks(const PerformanceMatrix& matrix,
                                     const BreakpointGrid& grid,
                                     const ComparisonSet& comparisons, double xi_star,
                                     const NecessaryRelation* relation) {
  const std::size_t m = matrix.num_alternatives();
  if (relation != nullptr && relation->size != m) {
    throw ValidationError("necessary relation does not match the matrix");
  }
  std::vector<RankRange> ranges(m);
  if (m == 1) return ranges;
  const ValueProgram base = ValueProgram::optimal_set(matrix, grid, comparisons, xi_star);
  parallel_for(2 * m, [&](std::size_t k) {
    const std::size_t i = k / 2;
    if (k % 2 == 0) {
      ranges[i].outranking_count = count_extreme(base, i, +1, relation);
    } else {
      ranges[i].dominance_count = count_extreme(base, i, -1, relation);
    }
  });
  for (auto& r : ranges) {
    r.best_rank = static_cast<int>(m) - r.outranking_count;
    r.worst_rank = r.dominance_count + 1;
    if (r.best_rank > r.worst_rank) throw InternalError("best rank exceeds worst rank");
  }
  return ranges;
}

double imprecision_index(const std::vector<RankRange>& ranges) {
  const std::size_t m = ranges.size();
  if (m < 2) throw ValidationError("imprecision index needs at least two alternatives");
  double total = 0.0;
  for (const auto& r : ranges) {
    total += static_cast<double>(r.worst_rank - r.best_rank) / static_cast<double>(m - 1);
  }
  return total / static_cast<double>(m);
}

std::vector<std::pair<std::size_t, std::size_t>> hasse(const NecessaryRelation& relation) {
  validate_order(relation);
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& [q, p] : relation.pairs) {
    bool covered = false;
    for (std::size_t r = 0; r < relation.size && !covered; ++r) {
      covered = r != q && r != p && relation.prefers(q, r) && relation.prefers(r, p);
    }
    if (!covered) edges.emplace_back(q, p);
  }
  return edges;
}

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + '"';
}

}  // namespace

std::string hasse_dot(const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                      const std::vector<std::string>& ids) {
  std::ostringstream out;
  out << "digraph necessary {\n  rankdir=TB;\n";
  for (const auto& id : ids) out << "  " << quoted(id) << ";\n";
  for (const auto& [q, p] : edges) {
    out << "  " << quoted(ids.at(q)) << " -> " << quoted(ids.at(p)) << ";\n";
  }
  out << "}\n";
  return out.str();
}

std::string rank_ranges_csv(const std::vector<RankRange>& ranges,
                            const std::vector<std::string>& ids) {
  std::ostringstream out;
  out << "id,best_rank,worst_rank\n";
  for (std::size_t i = 0; i < ranges.size(); ++i) {
    out << ids.at(i) << ',' << ranges[i].best_rank << ',' << ranges[i].worst_rank << '\n';
  }
  return out.str();
}

RobustnessReport analyze_robustness(const PerformanceMatrix& matrix,
                                    const BreakpointGrid& grid,
                                    const ComparisonSet& comparisons, double xi_star,
                                    bool with_necessary) {
  RobustnessReport report;
  if (with_necessary) {
    report.relation = necessary_relation(matrix, grid, comparisons, xi_star);
    report.hasse_edges = hasse(*report.relation);
  }
  report.ranges = extreme_ranks(matrix, grid, comparisons, xi_star,
                                report.relation ? &*report.relation : nullptr);
  if (matrix.num_alternatives() >= 2) report.imprecision = imprecision_index(report.ranges);
  if (report.relation) {
    for (const auto& [q, p] : report.relation->pairs) {
      const auto& rq = report.ranges[q];
      const auto& rp = report.ranges[p];
      if (rq.best_rank > rp.best_rank || rq.worst_rank > rp.worst_rank) {
        throw InternalError("rank ranges contradict the necessary relation");
      }
    }
  }
  return report;
}

}  // namespace bwd
