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

#include "bwd/pipeline.h"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

#include "bwd/consistency.h"
#include "bwd/disagg.h"
#include "bwd/error.h"
#include "bwd/refset.h"
#include "bwd/robust.h"

namespace bwd {

using nlohmann::json;

std::string fmt6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

namespace {

std::string join(const std::vector<std::string>& items, const char* sep = ", ") {
  std::string out;
  for (std::size_t k = 0; k < items.size(); ++k) {
    if (k) out += sep;
    out += items[k];
  }
  return out;
}

std::vector<std::string> ids_of(const PerformanceMatrix& m,
                                const std::vector<std::size_t>& rows) {
  std::vector<std::string> out;
  for (std::size_t i : rows) out.push_back(m.id(i));
  return out;
}

std::vector<std::string> all_ids(const PerformanceMatrix& m) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < m.num_alternatives(); ++i) out.push_back(m.id(i));
  return out;
}

void overfit_warning(const Session& s, std::vector<std::string>& warnings) {
  for (std::size_t j = 0; j < s.segments.size(); ++j) {
    if (static_cast<std::size_t>(s.segments[j]) > s.reference.size()) {
      warnings.push_back("criterion '" + s.require_matrix().criterion(j).name + "' has " +
                         std::to_string(s.segments[j]) + " segments but the reference set has " +
                         std::to_string(s.reference.size()) +
                         " alternatives; the model may overfit");
    }
  }
}

void append_warnings(std::ostringstream& out, const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) out << "warning: " << w << '\n';
}

json model_json(const PiecewiseValueModel& model, const PerformanceMatrix& m) {
  json criteria = json::array();
  for (std::size_t j = 0; j < m.num_criteria(); ++j) {
    const auto& bp = model.grid().breakpoints(j);
    // Breakpoints back in original units; cost criteria run from upper down.
    std::vector<double> levels;
    for (double x : bp) {
      levels.push_back(m.criterion(j).direction == Direction::kBenefit
                           ? x
                           : m.criterion(j).upper + m.criterion(j).lower - x);
    }
    criteria.push_back({{"name", m.criterion(j).name},
                        {"direction", to_string(m.criterion(j).direction)},
                        {"breakpoints", levels},
                        {"values", model.values()[j]},
                        {"weight", model.weight(j)}});
  }
  return {{"criteria", criteria}};
}

const json& require_solved(const Session& s) {
  const json* solved = s.cached(Stage::kSolve);
  if (solved == nullptr) throw WorkflowError("no current solution; run solve first");
  return *solved;
}

}  // namespace

Report run_refset(Session& session, const RefsetOptions& options) {
  const PerformanceMatrix& m = session.require_matrix();
  if (options.segments) {
    if (*options.segments < 1) throw ValidationError("segments must be at least 1");
    session.segments.assign(m.num_criteria(), *options.segments);
  }
  if (session.segments.empty()) throw WorkflowError("segment count not set");
  if (options.coverage < 1) throw ValidationError("coverage must be at least 1");
  const BreakpointGrid grid = session.grid();
  const CoverageArray cov = coverage_array(m, grid);
  std::set<std::size_t> forbidden;
  for (const auto& id : options.forbid) forbidden.insert(m.require_index(id));
  std::vector<std::size_t> additions;
  for (const auto& id : options.add) additions.push_back(m.require_index(id));

  const ReferenceSelection sel =
      select_reference_set(cov, dominance_pairs(m), options.coverage, forbidden);
  if (!sel.feasible) {
    std::ostringstream msg;
    msg << "no dominance-free reference set covers every segment " << options.coverage
        << " time(s)";
    for (const auto& c : sel.uncoverable) {
      msg << "\n  criterion '" << m.criterion(c.criterion).name << "' segment "
          << c.segment + 1 << ": " << c.candidates << " candidate(s), at most "
          << c.max_free_cover << " mutually non-dominated";
    }
    if (sel.joint_conflict) {
      msg << "\n  every cell is coverable alone; the dominance conflicts are joint";
    }
    throw InfeasibleError(msg.str());
  }
  const AugmentedReference aug = augment_reference_set(m, sel.selected, additions);
  Report r;
  r.warnings = aug.warnings;
  if (session.set_reference(ids_of(m, aug.reference))) {
    r.warnings.push_back("reference set changed; previous comparisons were discarded");
  }
  overfit_warning(session, r.warnings);

  const auto counts = cov.counts(aug.reference);
  json dominated = json::array();
  for (const auto& [a, b] : aug.dominated) dominated.push_back({m.id(a), m.id(b)});
  r.data = {{"segments", session.segments},
            {"coverage", options.coverage},
            {"forbid", options.forbid},
            {"add", options.add},
            {"selected", ids_of(m, sel.selected)},
            {"reference", session.reference},
            {"counts", counts},
            {"dominated_pairs", dominated},
            {"warnings", r.warnings}};
  session.store(Stage::kRefset, r.data);

  std::ostringstream out;
  out << "reference set (" << session.reference.size() << "): " << join(session.reference)
      << '\n';
  out << "minimum selection: " << sel.selected.size() << '\n';
  out << "coverage counts (criterion x segment):\n";
  for (std::size_t j = 0; j < counts.size(); ++j) {
    out << "  " << m.criterion(j).name << ':';
    for (int c : counts[j]) out << ' ' << c;
    out << '\n';
  }
  append_warnings(out, r.warnings);
  r.text = out.str();
  return r;
}

Report run_check(Session& session) {
  const ComparisonSet cmp = session.comparison_set();
  if (!cmp.real_valued()) {
    throw ValidationError("consistency checks need real-valued judgments");
  }
  const ConsistencyReport rep = analyze_consistency(cmp, session.thresholds);
  const RevisionReport rev = revision_ranges(cmp, session.thresholds);
  Report r;
  r.warnings = rep.verdicts.warnings;
  for (const auto& w : rev.warnings) {
    if (std::find(r.warnings.begin(), r.warnings.end(), w) == r.warnings.end()) {
      r.warnings.push_back(w);
    }
  }
  const auto& ref = session.reference;
  json ranges = json::array();
  for (const auto& g : rev.ranges) {
    ranges.push_back({{"vector", g.vector == JudgmentVector::kBestToOthers ? "bo" : "ow"},
                      {"id", ref[g.position]},
                      {"current", g.current},
                      {"feasible", g.feasible},
                      {"lower", g.lower},
                      {"upper", g.upper},
                      {"acceptable_lower", g.acceptable_lower},
                      {"acceptable_upper", g.acceptable_upper},
                      {"pinned", g.pinned}});
  }
  r.data = {{"reference", ref},
            {"best", session.comparisons->best},
            {"worst", session.comparisons->worst},
            {"ordinal_ratio", rep.ordinal.ratio},
            {"ordinal_per_alternative", rep.ordinal.per_alternative},
            {"violations", rep.ordinal.violations},
            {"cardinal_ratio", rep.cardinal.ratio},
            {"cardinal_deviations", rep.cardinal.deviations},
            {"threshold", rep.verdicts.threshold ? json(*rep.verdicts.threshold) : json()},
            {"ordinal_verdict", to_string(rep.verdicts.ordinal)},
            {"cardinal_verdict", to_string(rep.verdicts.cardinal)},
            {"revision_threshold", rev.threshold},
            {"revision_ranges", ranges},
            {"warnings", r.warnings}};
  session.store(Stage::kConsistency, r.data);

  std::ostringstream out;
  out << "OR = " << fmt6(rep.ordinal.ratio) << " (" << to_string(rep.verdicts.ordinal)
      << ")\n";
  out << "CR = " << fmt6(rep.cardinal.ratio) << " (" << to_string(rep.verdicts.cardinal);
  if (rep.verdicts.threshold) out << ", threshold " << fmt6(*rep.verdicts.threshold);
  out << ")\n";
  out << "OR_i:";
  for (std::size_t p = 0; p < ref.size(); ++p) {
    out << ' ' << ref[p] << '=' << fmt6(rep.ordinal.per_alternative[p]);
  }
  out << "\nviolations:\n";
  for (std::size_t p = 0; p < ref.size(); ++p) {
    out << "  " << ref[p] << ':';
    for (double f : rep.ordinal.violations[p]) out << ' ' << fmt6(f);
    out << '\n';
  }
  out << "revision ranges (improving; acceptable):\n";
  for (const auto& g : rev.ranges) {
    out << "  " << (g.vector == JudgmentVector::kBestToOthers ? "BO " : "OW ")
        << ref[g.position] << " = " << fmt6(g.current) << ": ";
    if (g.pinned) {
      out << "fixed";
    } else {
      out << (g.feasible ? "[" + fmt6(g.lower) + ", " + fmt6(g.upper) + "]" : "none")
          << "; [" << fmt6(g.acceptable_lower) << ", " << fmt6(g.acceptable_upper) << "]";
    }
    out << '\n';
  }
  append_warnings(out, r.warnings);
  r.text = out.str();
  return r;
}

Report run_solve(Session& session) {
  if (!session.comparisons) {
    throw WorkflowError("solve needs comparisons; submit judgments first");
  }
  const PerformanceMatrix& m = session.require_matrix();
  const ComparisonSet cmp = session.comparison_set();
  const BreakpointGrid grid = session.grid();
  const DisaggregationResult res = solve(m, grid, cmp);
  Report r;
  overfit_warning(session, r.warnings);
  const std::vector<int> ranks = realized_ranks(res.values);
  json ranking = json::array();
  for (const auto& g : res.ranking) ranking.push_back(ids_of(m, g));
  r.data = {{"model", to_string(res.kind)},
            {"xi_star", res.xi_star},
            {"representative", model_json(res.representative, m)},
            {"ids", all_ids(m)},
            {"values", res.values},
            {"ranks", ranks},
            {"ranking", ranking},
            {"warnings", r.warnings}};
  session.store(Stage::kSolve, r.data);

  std::ostringstream out;
  out << (res.kind == ModelKind::kBwd ? "BWD" : "I-BWD") << ": xi* = " << fmt6(res.xi_star)
      << '\n';
  out << "weights:";
  for (std::size_t j = 0; j < m.num_criteria(); ++j) {
    out << ' ' << m.criterion(j).name << '=' << fmt6(res.representative.weight(j));
  }
  out << "\nranking:\n";
  for (const auto& g : res.ranking) {
    for (std::size_t i : g) {
      out << "  " << ranks[i] << ". " << m.id(i) << "  " << fmt6(res.values[i]) << '\n';
    }
  }
  append_warnings(out, r.warnings);
  r.text = out.str();
  return r;
}

namespace {

json robustness_json(const RobustnessReport& rep, const PerformanceMatrix& m) {
  json ranges = json::array();
  for (std::size_t i = 0; i < rep.ranges.size(); ++i) {
    ranges.push_back({{"id", m.id(i)},
                      {"best_rank", rep.ranges[i].best_rank},
                      {"worst_rank", rep.ranges[i].worst_rank},
                      {"outranking_count", rep.ranges[i].outranking_count},
                      {"dominance_count", rep.ranges[i].dominance_count}});
  }
  json necessary;
  json edges;
  if (rep.relation) {
    json pairs = json::array();
    for (const auto& [q, p] : rep.relation->pairs) pairs.push_back({m.id(q), m.id(p)});
    necessary = {{"pairs", pairs}, {"delta", rep.relation->delta}};
    edges = json::array();
    for (const auto& [q, p] : rep.hasse_edges) edges.push_back({m.id(q), m.id(p)});
  }
  return {{"ranges", ranges},
          {"imprecision", rep.imprecision ? json(*rep.imprecision) : json()},
          {"necessary", necessary},
          {"hasse_edges", edges}};
}

RobustnessReport robustness(Session& session, bool with_necessary) {
  const double xi_star = require_solved(session).at("xi_star").get<double>();
  return analyze_robustness(session.require_matrix(), session.grid(),
                            session.comparison_set(), xi_star, with_necessary);
}

}  // namespace

Report run_ranks(Session& session, bool skip_necessary) {
  const PerformanceMatrix& m = session.require_matrix();
  const RobustnessReport rep = robustness(session, !skip_necessary);
  Report r;
  r.data = robustness_json(rep, m);
  session.store(Stage::kRobustness, r.data);

  std::ostringstream out;
  out << rank_ranges_csv(rep.ranges, all_ids(m));
  if (rep.imprecision) out << "U = " << fmt6(*rep.imprecision) << '\n';
  if (rep.relation) {
    out << "necessary pairs: " << rep.relation->pairs.size() << '\n';
  }
  r.text = out.str();
  return r;
}

Report run_hasse(Session& session) {
  const PerformanceMatrix& m = session.require_matrix();
  const json* cached = session.cached(Stage::kRobustness);
  json data;
  if (cached != nullptr && !cached->at("necessary").is_null()) {
    data = *cached;
  } else {
    data = robustness_json(robustness(session, true), m);
    session.store(Stage::kRobustness, data);
  }
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& e : data.at("hasse_edges")) {
    edges.emplace_back(m.require_index(e[0].get<std::string>()),
                       m.require_index(e[1].get<std::string>()));
  }
  Report r;
  r.text = hasse_dot(edges, all_ids(m));
  r.data = {{"hasse_edges", data.at("hasse_edges")}, {"dot", r.text}};
  return r;
}

json results(const Session& session) {
  json out = require_solved(session);
  const json* rob = session.cached(Stage::kRobustness);
  out["robustness"] = rob ? *rob : json();
  return out;
}

}  // namespace bwd
