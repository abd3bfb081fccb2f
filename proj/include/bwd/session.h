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

#ifndef BWD_SESSION_H_
#define BWD_SESSION_H_

// Persistent analysis session: one JSON document ("schema": 1) holding the
// inputs of every workflow stage and the cached outputs, each stamped with a
// hash of the inputs it was computed from.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bwd/consistency.h"
#include "bwd/model.h"

namespace bwd {

inline constexpr int kSessionSchema = 1;

enum class Stage { kRefset, kConsistency, kSolve, kRobustness };
const char* to_string(Stage s);

struct StoredComparisons {
  std::string best;
  std::string worst;
  std::vector<Judgment> bo;  // aligned with Session::reference
  std::vector<Judgment> ow;

  friend bool operator==(const StoredComparisons&, const StoredComparisons&) = default;
};

class Session {
 public:
  Session() : thresholds(ThresholdTable::defaults()) {}

  std::uint64_t revision = 0;
  std::string matrix_source;
  std::optional<PerformanceMatrix> matrix;
  std::vector<int> segments;  // one per criterion
  std::vector<std::string> reference;
  std::optional<StoredComparisons> comparisons;
  ThresholdTable thresholds;
  nlohmann::json cache = nlohmann::json::object();

  // Throw WorkflowError naming the missing input.
  const PerformanceMatrix& require_matrix() const;
  BreakpointGrid grid() const;
  ComparisonSet comparison_set() const;

  // Replaces the comparisons after checking them against the reference.
  void set_comparisons(StoredComparisons c);
  // Replaces the reference set; comparisons that no longer align are dropped.
  // Returns true when comparisons were dropped.
  bool set_reference(std::vector<std::string> ids);

  std::string input_hash(Stage stage) const;
  // Cached output for the stage if its stamp matches the current inputs.
  const nlohmann::json* cached(Stage stage) const;
  void store(Stage stage, nlohmann::json data);
  // Drops cache entries whose stamps no longer match.
  void invalidate_stale();

  nlohmann::json to_json() const;
  // Throws ValidationError on schema violations.
  static Session from_json(const nlohmann::json& doc);

  std::string serialize() const;
  static Session parse(const std::string& text);
  static Session load(const std::string& path);
  void save(const std::string& path) const;
};

nlohmann::json judgment_to_json(const Judgment& j);
// Accepts a number or a two-element [lo, hi] array.
Judgment judgment_from_json(const nlohmann::json& v);

nlohmann::json matrix_to_json(const PerformanceMatrix& m);
PerformanceMatrix matrix_from_json(const nlohmann::json& v);

std::string fnv1a_hex(const std::string& bytes);

}  // namespace bwd

#endif  // BWD_SESSION_H_
