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

#include "bwd/consistency.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "bwd/error.h"

namespace bwd {

ThresholdTable ThresholdTable::defaults() {
  ThresholdTable t;
  t.set(5, 8.0, 0.284);
  return t;
}

void ThresholdTable::set(std::size_t size, double a_bw, double threshold) {
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw ValidationError("consistency threshold must lie in (0, 1]");
  }
  for (ThresholdEntry& e : entries_) {
    if (e.size == size && e.a_bw == a_bw) {
      e.threshold = threshold;
      return;
    }
  }
  entries_.push_back({size, a_bw, threshold});
}

std::optional<double> ThresholdTable::lookup(std::size_t size, double a_bw) const {
  for (const ThresholdEntry& e : entries_) {
    if (e.size == size && std::abs(e.a_bw - a_bw) <= 1e-9) return e.threshold;
  }
  return std::nullopt;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kPass:
      return "pass";
    case Verdict::kFail:
      return "fail";
    case Verdict::kUnknownThreshold:
      return "unknown-threshold";
  }
  return "unknown-threshold";
}

namespace {

void require_real(const ComparisonSet& c) {
  if (!c.real_valued()) {
    throw ValidationError(
        "consistency ratios are defined for real-valued judgments only");
  }
}

// Judgment values as plain vectors so the sweep can perturb them.
struct Values {
  std::vector<double> bo;
  std::vector<double> ow;
  std::size_t best = 0;   // reference position of B
  std::size_t worst = 0;  // reference position of W
};

Values values_of(const ComparisonSet& c) {
  Values v;
  for (const Judgment& a : c.bo()) v.bo.push_back(a.value());
  for (const Judgment& a : c.ow()) v.ow.push_back(a.value());
  v.best = c.best_position();
  v.worst = c.worst_position();
  return v;
}

double step_f(double bk, double bi, double iw, double kw) {
  const double x = (bk - bi) * (iw - kw);
  if (x < 0.0) return 1.0;
  if (x == 0.0 && (bk != bi || iw != kw)) return 0.5;
  return 0.0;
}

OrdinalConsistency ordinal_of(const Values& v) {
  const std::size_t r = v.bo.size();
  OrdinalConsistency out;
  out.violations.assign(r, std::vector<double>(r, 0.0));
  out.per_alternative.assign(r, 0.0);
  for (std::size_t i = 0; i < r; ++i) {
    double sum = 0.0;
    for (std::size_t k = 0; k < r; ++k) {
      const double f = step_f(v.bo[k], v.bo[i], v.ow[i], v.ow[k]);
      out.violations[i][k] = f;
      sum += f;
    }
    out.per_alternative[i] = sum / static_cast<double>(r);
  }
  out.ratio = *std::max_element(out.per_alternative.begin(), out.per_alternative.end());
  return out;
}

double ordinal_of_alternative(const Values& v, std::size_t i) {
  double sum = 0.0;
  for (std::size_t k = 0; k < v.bo.size(); ++k) {
    sum += step_f(v.bo[k], v.bo[i], v.ow[i], v.ow[k]);
  }
  return sum / static_cast<double>(v.bo.size());
}

CardinalConsistency cardinal_of(const Values& v) {
  CardinalConsistency out;
  out.deviations.assign(v.bo.size(), 0.0);
  const double a_bw = v.bo[v.worst];
  if (a_bw < 2.0) return out;  // denominator vanishes at a_BW = 1
  const double denom = std::abs(a_bw * a_bw - a_bw);
  for (std::size_t i = 0; i < v.bo.size(); ++i) {
    out.deviations[i] = std::abs(v.bo[i] * v.ow[i] - a_bw) / denom;
    out.ratio = std::max(out.ratio, out.deviations[i]);
  }
  return out;
}

}  // namespace

OrdinalConsistency ordinal_ratio(const ComparisonSet& c) {
  require_real(c);
  return ordinal_of(values_of(c));
}

CardinalConsistency cardinal_ratio(const ComparisonSet& c) {
  require_real(c);
  return cardinal_of(values_of(c));
}

Verdicts check_thresholds(double ordinal, double cardinal, std::size_t size,
                          double a_bw, const ThresholdTable& table) {
  Verdicts v;
  v.ordinal = ordinal == 0.0 ? Verdict::kPass : Verdict::kFail;
  v.threshold = table.lookup(size, a_bw);
  if (v.threshold) {
    v.cardinal = cardinal <= *v.threshold ? Verdict::kPass : Verdict::kFail;
  } else {
    v.cardinal = Verdict::kUnknownThreshold;
    v.warnings.push_back("no cardinal threshold for " + std::to_string(size) +
                         " alternatives and a_BW = " + std::to_string(a_bw) +
                         "; supply a threshold table");
  }
  return v;
}

ConsistencyReport analyze_consistency(const ComparisonSet& c,
                                      const ThresholdTable& table) {
  ConsistencyReport r;
  r.ordinal = ordinal_ratio(c);
  r.cardinal = cardinal_ratio(c);
  r.verdicts = check_thresholds(r.ordinal.ratio, r.cardinal.ratio, c.size(),
                                c.a_bw(), table);
  return r;
}

namespace {

constexpr double kSweepStep = 0.01;
constexpr double kBisectionTolerance = 1e-4;

// Largest run of consecutive feasible candidates: the run containing the
// current value when it is feasible, otherwise the longest run (the one
// closest to the current value on ties).
struct Run {
  std::size_t first = 0;
  std::size_t last = 0;
  bool found = false;
};

Run pick_run(const std::vector<double>& points, const std::vector<char>& ok,
             double current) {
  std::vector<Run> runs;
  for (std::size_t p = 0; p < points.size(); ++p) {
    if (!ok[p]) continue;
    if (!runs.empty() && runs.back().last + 1 == p) {
      runs.back().last = p;
    } else {
      runs.push_back({p, p, true});
    }
  }
  if (runs.empty()) return {};
  for (const Run& r : runs) {
    if (points[r.first] <= current && current <= points[r.last]) return r;
  }
  auto distance = [&](const Run& r) {
    if (current < points[r.first]) return points[r.first] - current;
    return current - points[r.last];
  };
  Run best = runs.front();
  for (const Run& r : runs) {
    const std::size_t len = r.last - r.first;
    const std::size_t best_len = best.last - best.first;
    if (len > best_len || (len == best_len && distance(r) < distance(best))) best = r;
  }
  return best;
}

// Bisection between an infeasible point and a feasible point; returns the
// feasible end once the bracket is narrower than the tolerance.
double refine(double infeasible, double feasible,
              const std::function<bool(double)>& ok) {
  while (std::abs(feasible - infeasible) > kBisectionTolerance) {
    const double mid = 0.5 * (infeasible + feasible);
    if (ok(mid)) {
      feasible = mid;
    } else {
      infeasible = mid;
    }
  }
  return feasible;
}

struct Interval {
  bool feasible = false;
  double lower = 1.0;
  double upper = 1.0;
};

Interval sweep(const std::vector<double>& extra, double current,
               const std::function<bool(double)>& ok) {
  std::vector<double> points;
  const int steps = static_cast<int>(std::lround((kScaleMax - kScaleMin) / kSweepStep));
  for (int t = 0; t <= steps; ++t) points.push_back((100.0 + t) / 100.0);
  for (double e : extra) {
    if (e >= kScaleMin && e <= kScaleMax) points.push_back(e);
  }
  points.push_back(current);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  std::vector<char> feasible(points.size());
  for (std::size_t p = 0; p < points.size(); ++p) feasible[p] = ok(points[p]) ? 1 : 0;
  const Run run = pick_run(points, feasible, current);
  Interval out;
  if (!run.found) return out;
  out.feasible = true;
  out.lower = run.first == 0 ? points.front()
                             : refine(points[run.first - 1], points[run.first], ok);
  out.upper = run.last + 1 == points.size()
                  ? points.back()
                  : refine(points[run.last + 1], points[run.last], ok);
  return out;
}

}  // namespace

RevisionReport revision_ranges(const ComparisonSet& c, const ThresholdTable& table) {
  require_real(c);
  RevisionReport report;
  const Values base = values_of(c);
  const auto thr = table.lookup(c.size(), c.a_bw());
  if (thr) {
    report.threshold = *thr;
    report.threshold_known = true;
  } else {
    report.threshold = 1.0;
    report.warnings.push_back(
        "no cardinal threshold for this reference-set size and a_BW; ranges use CR <= 1");
  }
  const double threshold = report.threshold;

  std::vector<double> extra;
  for (double v : base.bo) extra.push_back(v);
  for (double v : base.ow) extra.push_back(v);

  const std::size_t r = base.bo.size();
  for (int vec = 0; vec < 2; ++vec) {
    const bool bo = vec == 0;
    for (std::size_t pos = 0; pos < r; ++pos) {
      RevisionRange range;
      range.vector = bo ? JudgmentVector::kBestToOthers : JudgmentVector::kOthersToWorst;
      range.position = pos;
      range.current = bo ? base.bo[pos] : base.ow[pos];
      if ((bo && pos == base.best) || (!bo && pos == base.worst)) {
        range.pinned = true;
        range.feasible = true;
        report.ranges.push_back(range);
        continue;
      }
      // a_BW sits at bo[W] and ow[B]; both copies move together.
      const bool shared = (bo && pos == base.worst) || (!bo && pos == base.best);
      auto with = [&](double value) {
        Values v = base;
        if (shared) {
          v.bo[v.worst] = value;
          v.ow[v.best] = value;
        } else if (bo) {
          v.bo[pos] = value;
        } else {
          v.ow[pos] = value;
        }
        return v;
      };
      auto cardinal_ok = [&](double value) {
        return cardinal_of(with(value)).ratio <= threshold;
      };
      auto combined_ok = [&](double value) {
        const Values v = with(value);
        if (cardinal_of(v).ratio > threshold) return false;
        if (shared) {
          return ordinal_of_alternative(v, v.best) == 0.0 &&
                 ordinal_of_alternative(v, v.worst) == 0.0;
        }
        return ordinal_of_alternative(v, pos) == 0.0;
      };
      const Interval both = sweep(extra, range.current, combined_ok);
      const Interval card = sweep(extra, range.current, cardinal_ok);
      range.feasible = both.feasible;
      range.lower = both.lower;
      range.upper = both.upper;
      range.acceptable_lower = card.lower;
      range.acceptable_upper = card.upper;
      report.ranges.push_back(range);
    }
  }
  return report;
}

}  // namespace bwd
