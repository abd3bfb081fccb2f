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

#ifndef BWD_CONSISTENCY_H_
#define BWD_CONSISTENCY_H_

// Consistency of real-valued best/worst judgments: the ordinal ratio (pairs of
// alternatives ranked differently by the two vectors), the input-based
// cardinal ratio (deviation from a_Bi * a_iW = a_BW), threshold checks, and
// per-judgment revision ranges for the elicitation loop.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "bwd/model.h"

namespace bwd {

struct ThresholdEntry {
  std::size_t size = 0;  // number of reference alternatives
  double a_bw = 0.0;
  double threshold = 0.0;
};

// Cardinal-ratio acceptance thresholds keyed by (|R|, a_BW).
class ThresholdTable {
 public:
  ThresholdTable() = default;

  // Ships the single published cell (5, 8) -> 0.284.
  static ThresholdTable defaults();

  // Throws ValidationError unless threshold lies in (0, 1]. Replaces an
  // existing cell with the same key.
  void set(std::size_t size, double a_bw, double threshold);
  std::optional<double> lookup(std::size_t size, double a_bw) const;
  const std::vector<ThresholdEntry>& entries() const { return entries_; }

  friend bool operator==(const ThresholdTable& a, const ThresholdTable& b) {
    if (a.entries_.size() != b.entries_.size()) return false;
    for (std::size_t i = 0; i < a.entries_.size(); ++i) {
      if (a.entries_[i].size != b.entries_[i].size ||
          a.entries_[i].a_bw != b.entries_[i].a_bw ||
          a.entries_[i].threshold != b.entries_[i].threshold) {
        return false;
      }
    }
    return true;
  }

 private:
  std::vector<ThresholdEntry> entries_;
};

enum class Verdict { kPass, kFail, kUnknownThreshold };
const char* to_string(Verdict v);

struct OrdinalConsistency {
  double ratio = 0.0;                          // OR
  std::vector<double> per_alternative;         // OR_i, by reference position
  std::vector<std::vector<double>> violations; // F values in {0, 0.5, 1}
};

struct CardinalConsistency {
  double ratio = 0.0;               // CR
  std::vector<double> deviations;   // per reference position
};

struct Verdicts {
  Verdict ordinal = Verdict::kUnknownThreshold;
  Verdict cardinal = Verdict::kUnknownThreshold;
  std::optional<double> threshold;
  std::vector<std::string> warnings;
};

struct ConsistencyReport {
  OrdinalConsistency ordinal;
  CardinalConsistency cardinal;
  Verdicts verdicts;
};

// Both throw ValidationError for interval-valued sets.
OrdinalConsistency ordinal_ratio(const ComparisonSet& c);
CardinalConsistency cardinal_ratio(const ComparisonSet& c);

Verdicts check_thresholds(double ordinal, double cardinal, std::size_t size,
                          double a_bw, const ThresholdTable& table);

ConsistencyReport analyze_consistency(const ComparisonSet& c,
                                      const ThresholdTable& table);

enum class JudgmentVector { kBestToOthers, kOthersToWorst };

struct RevisionRange {
  JudgmentVector vector = JudgmentVector::kBestToOthers;
  std::size_t position = 0;  // reference position
  double current = 1.0;
  // Values keeping the alternative's ordinal ratio at zero and CR within
  // the threshold, every other judgment held fixed.
  bool feasible = false;
  double lower = 1.0;
  double upper = 1.0;
  // Values keeping CR within the threshold (ordinal condition ignored).
  double acceptable_lower = 1.0;
  double acceptable_upper = 1.0;
  bool pinned = false;  // a_BB and a_WW are fixed at 1
};

struct RevisionReport {
  std::vector<RevisionRange> ranges;  // best-to-others first, then others-to-worst
  double threshold = 1.0;
  bool threshold_known = false;
  std::vector<std::string> warnings;
};

// Brute-force sweep of [1, 9] at step 0.01, endpoints refined by bisection to
// 1e-4. The a_BW entry is shared by both vectors and is swept jointly.
RevisionReport revision_ranges(const ComparisonSet& c, const ThresholdTable& table);

}  // namespace bwd

#endif  // BWD_CONSISTENCY_H_
