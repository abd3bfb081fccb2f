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

#include "bwd/session.h"

#include <algorithm>
#include <cstdio>

#include "bwd/error.h"
#include "bwd/io.h"

namespace bwd {

using nlohmann::json;

const char* to_string(Stage s) {
  switch (s) {
    case Stage::kRefset: return "refset";
    case Stage::kConsistency: return "consistency";
    case Stage::kSolve: return "solve";
    case Stage::kRobustness: return "robustness";
  }
  return "?";
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json judgment_to_json(const Judgment& j) {
  if (j.interval) return json::array({j.lower, j.upper});
  return j.lower;
}

Judgment judgment_from_json(const json& v) {
  if (v.is_number()) return Judgment::real(v.get<double>());
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return Judgment::range(v[0].get<double>(), v[1].get<double>());
  }
  throw ValidationError("judgment must be a number or a [lo, hi] pair, got " + v.dump());
}

json matrix_to_json(const PerformanceMatrix& m) {
  json criteria = json::array();
  for (const Criterion& c : m.criteria()) {
    criteria.push_back({{"name", c.name},
                        {"direction", to_string(c.direction)},
                        {"lower", c.lower},
                        {"upper", c.upper}});
  }
  json alternatives = json::array();
  for (const Alternative& a : m.alternatives()) {
    alternatives.push_back({{"id", a.id}, {"levels", a.levels}});
  }
  return {{"criteria", criteria}, {"alternatives", alternatives}};
}

PerformanceMatrix matrix_from_json(const json& v) {
  std::vector<Criterion> criteria;
  for (const json& c : v.at("criteria")) {
    criteria.push_back({c.at("name").get<std::string>(),
                        parse_direction(c.at("direction").get<std::string>()),
                        c.at("lower").get<double>(), c.at("upper").get<double>()});
  }
  std::vector<Alternative> alternatives;
  for (const json& a : v.at("alternatives")) {
    alternatives.push_back(
        {a.at("id").get<std::string>(), a.at("levels").get<std::vector<double>>()});
  }
  return PerformanceMatrix(std::move(criteria), std::move(alternatives));
}

const PerformanceMatrix& Session::require_matrix() const {
  if (!matrix) throw WorkflowError("session has no performance matrix");
  return *matrix;
}

BreakpointGrid Session::grid() const {
  const PerformanceMatrix& m = require_matrix();
  if (segments.empty()) throw WorkflowError("session has no segment counts");
  return build_grid(m, segments);
}

ComparisonSet Session::comparison_set() const {
  const PerformanceMatrix& m = require_matrix();
  if (reference.empty()) throw WorkflowError("session has no reference set");
  if (!comparisons) throw WorkflowError("session has no comparisons");
  std::vector<std::size_t> ref;
  for (const auto& id : reference) ref.push_back(m.require_index(id));
  return ComparisonSet(std::move(ref), m.require_index(comparisons->best),
                       m.require_index(comparisons->worst), comparisons->bo,
                       comparisons->ow);
}

void Session::set_comparisons(StoredComparisons c) {
  std::optional<StoredComparisons> previous = std::move(comparisons);
  comparisons = std::move(c);
  try {
    comparison_set();
  } catch (...) {
    comparisons = std::move(previous);
    throw;
  }
}

bool Session::set_reference(std::vector<std::string> ids) {
  const PerformanceMatrix& m = require_matrix();
  for (const auto& id : ids) m.require_index(id);
  const bool dropped = comparisons.has_value() && ids != reference;
  if (dropped) comparisons.reset();
  reference = std::move(ids);
  return dropped;
}

namespace {

json comparisons_json(const StoredComparisons& c) {
  json bo = json::array();
  json ow = json::array();
  for (const auto& j : c.bo) bo.push_back(judgment_to_json(j));
  for (const auto& j : c.ow) ow.push_back(judgment_to_json(j));
  return {{"best", c.best}, {"worst", c.worst}, {"bo", bo}, {"ow", ow}};
}

json thresholds_json(const ThresholdTable& t) {
  json out = json::array();
  for (const auto& e : t.entries()) out.push_back({e.size, e.a_bw, e.threshold});
  return out;
}

}  // namespace

std::string Session::input_hash(Stage stage) const {
  json in = json::object();
  const json m = matrix ? matrix_to_json(*matrix) : json();
  const json c = comparisons ? comparisons_json(*comparisons) : json();
  switch (stage) {
    case Stage::kRefset:
      in = {{"matrix", m}, {"segments", segments}};
      break;
    case Stage::kConsistency:
      in = {{"reference", reference}, {"comparisons", c},
            {"thresholds", thresholds_json(thresholds)}};
      break;
    case Stage::kSolve:
    case Stage::kRobustness:
      in = {{"matrix", m}, {"segments", segments}, {"reference", reference},
            {"comparisons", c}};
      break;
  }
  return fnv1a_hex(in.dump());
}

const json* Session::cached(Stage stage) const {
  const auto it = cache.find(to_string(stage));
  if (it == cache.end()) return nullptr;
  const auto stamp = it->find("input_hash");
  if (stamp == it->end() || *stamp != input_hash(stage)) return nullptr;
  return &it->at("data");
}

void Session::store(Stage stage, json data) {
  cache[to_string(stage)] = {{"input_hash", input_hash(stage)}, {"data", std::move(data)}};
}

void Session::invalidate_stale() {
  for (Stage s : {Stage::kRefset, Stage::kConsistency, Stage::kSolve, Stage::kRobustness}) {
    if (cache.contains(to_string(s)) && cached(s) == nullptr) cache.erase(to_string(s));
  }
}

json Session::to_json() const {
  json doc = {{"schema", kSessionSchema},
              {"revision", revision},
              {"matrix_source", matrix_source},
              {"matrix", matrix ? matrix_to_json(*matrix) : json()},
              {"segments", segments},
              {"reference", reference},
              {"comparisons", comparisons ? comparisons_json(*comparisons) : json()},
              {"thresholds", thresholds_json(thresholds)},
              {"cache", cache}};
  return doc;
}

Session Session::from_json(const json& doc) {
  try {
    if (!doc.is_object()) throw ValidationError("session must be a JSON object");
    if (doc.value("schema", 0) != kSessionSchema) {
      throw ValidationError("unsupported session schema " + doc.value("schema", json()).dump());
    }
    static const char* kKnown[] = {"schema",     "revision",    "matrix_source",
                                   "matrix",     "segments",    "reference",
                                   "comparisons", "thresholds", "cache"};
    for (const auto& [key, _] : doc.items()) {
      if (std::find(std::begin(kKnown), std::end(kKnown), key) == std::end(kKnown)) {
        throw ValidationError("unknown session field '" + key + "'");
      }
    }
    Session s;
    s.revision = doc.value("revision", std::uint64_t{0});
    s.matrix_source = doc.value("matrix_source", std::string());
    if (doc.contains("matrix") && !doc["matrix"].is_null()) {
      s.matrix = matrix_from_json(doc["matrix"]);
    }
    s.segments = doc.value("segments", std::vector<int>{});
    if (!s.segments.empty()) {
      if (!s.matrix) throw ValidationError("segments given without a matrix");
      if (s.segments.size() != s.matrix->num_criteria()) {
        throw ValidationError("segments must list one count per criterion");
      }
      s.grid();
    }
    s.reference = doc.value("reference", std::vector<std::string>{});
    if (!s.reference.empty()) {
      for (const auto& id : s.reference) s.require_matrix().require_index(id);
    }
    if (doc.contains("comparisons") && !doc["comparisons"].is_null()) {
      const json& c = doc["comparisons"];
      StoredComparisons sc;
      sc.best = c.at("best").get<std::string>();
      sc.worst = c.at("worst").get<std::string>();
      for (const json& j : c.at("bo")) sc.bo.push_back(judgment_from_json(j));
      for (const json& j : c.at("ow")) sc.ow.push_back(judgment_from_json(j));
      s.set_comparisons(std::move(sc));
    }
    if (doc.contains("thresholds")) {
      s.thresholds = ThresholdTable();
      for (const json& e : doc["thresholds"]) {
        if (!e.is_array() || e.size() != 3) {
          throw ValidationError("threshold entries are [size, a_bw, threshold]");
        }
        s.thresholds.set(e[0].get<std::size_t>(), e[1].get<double>(), e[2].get<double>());
      }
    }
    if (doc.contains("cache")) {
      if (!doc["cache"].is_object()) throw ValidationError("cache must be an object");
      s.cache = doc["cache"];
      s.invalidate_stale();
    }
    return s;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed session: ") + e.what());
  }
}

std::string Session::serialize() const { return to_json().dump(2) + "\n"; }

Session Session::parse(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("session is not valid JSON: ") + e.what());
  }
  return from_json(doc);
}

Session Session::load(const std::string& path) { return parse(read_file(path)); }

void Session::save(const std::string& path) const { write_file_atomic(path, serialize()); }

}  // namespace bwd
