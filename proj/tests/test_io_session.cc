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

#include <cstdio>
#include <filesystem>

#include "bwd/error.h"
#include "bwd/io.h"
#include "bwd/session.h"
#include "support/fixtures.h"

using namespace bwd;
namespace fs = std::filesystem;

namespace {

std::string error_of(const std::string& csv) {
  try {
    parse_matrix_csv(csv, "m.csv");
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "bwd_io_session_test";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("matrix csv parsing") {
  const PerformanceMatrix m = parse_matrix_csv(testing::kCountriesCsv);
  CHECK(m.num_alternatives() == 7);
  CHECK(m.num_criteria() == 2);
  CHECK(m.id(1) == "Hungary");
  CHECK(m.criterion(1).name == "tracking");
  CHECK(m.criterion(0).lower == 1.0);
  CHECK(m.criterion(0).upper == 5.0);
  CHECK(m.level(3, 1) == 3.3);

  const PerformanceMatrix observed =
      parse_matrix_csv("id,price,speed\n#direction,cost,benefit\na,10,1\nb,20,3\n");
  CHECK(observed.criterion(0).direction == Direction::kCost);
  CHECK(observed.criterion(0).lower == 10.0);
  CHECK(observed.criterion(1).upper == 3.0);
  CHECK(observed.oriented_level(0, 0) == 20.0);

  CHECK(parse_matrix_csv("id,x\r\n\"a, b\",1\r\nc,2\r\n").id(0) == "a, b");
}

TEST_CASE("matrix csv errors carry line numbers") {
  CHECK(error_of("") .find("m.csv:1:") == 0);
  CHECK(error_of("id,x\na,1\nb,1,2\n").find("m.csv:3:") == 0);
  CHECK(error_of("id,x\na,1\nb,two\n").find("m.csv:3: not a number") == 0);
  CHECK(error_of("id,x\na,1\na,2\n").find("m.csv:3: duplicate id") == 0);
  CHECK(error_of("id,x\n#weights,1\na,1\n").find("m.csv:2: unknown metadata row") == 0);
  CHECK(error_of("id,x\n#range,1\na,1\n").find("m.csv:2:") == 0);
  CHECK(error_of("id,x\n#direction,sideways\na,1\n").find("m.csv:2:") == 0);
  CHECK(error_of("id,x\n#range,0:1\na,3\n").find("m.csv:") == 0);
}

TEST_CASE("threshold csv parsing") {
  const ThresholdTable t = parse_thresholds_csv("size,a_bw,threshold\n3,4,0.25\n5,8,0.3\n");
  CHECK(*t.lookup(3, 4.0) == 0.25);
  CHECK(*t.lookup(5, 8.0) == 0.3);
  CHECK_FALSE(t.lookup(4, 4.0).has_value());
  CHECK(parse_thresholds_csv("3,4,0.25\n").entries().size() == 1);
  CHECK_THROWS_AS(parse_thresholds_csv("3,4\n"), ValidationError);
  CHECK_THROWS_AS(parse_thresholds_csv("1,4,0.2\n"), ValidationError);
  CHECK_THROWS_AS(parse_thresholds_csv("3,4,2\n"), ValidationError);
}

TEST_CASE("judgment json") {
  CHECK(judgment_to_json(Judgment::real(3)) == nlohmann::json(3.0));
  CHECK(judgment_to_json(Judgment::range(2, 3)) == nlohmann::json::array({2.0, 3.0}));
  CHECK(judgment_from_json(nlohmann::json::array({2, 3})).upper == 3.0);
  CHECK_FALSE(judgment_from_json(nlohmann::json(4)).interval);
  CHECK_THROWS_AS(judgment_from_json(nlohmann::json("x")), ValidationError);
  CHECK_THROWS_AS(judgment_from_json(nlohmann::json::array({1, 2, 3})), ValidationError);
}

TEST_CASE("session round trip is byte identical") {
  Session s = testing::countries_session();
  s.revision = 7;
  s.store(Stage::kSolve, {{"xi_star", 0.125}});
  const std::string text = s.serialize();
  const Session back = Session::parse(text);
  CHECK(back.serialize() == text);
  CHECK(back.revision == 7);
  CHECK(back.reference.size() == 5);
  REQUIRE(back.comparisons.has_value());
  CHECK(*back.comparisons == *s.comparisons);
  REQUIRE(back.cached(Stage::kSolve) != nullptr);
  CHECK((*back.cached(Stage::kSolve))["xi_star"] == 0.125);

  Session iv = testing::countries_session();
  auto c = *iv.comparisons;
  c.bo[1] = Judgment::range(2, 3);
  c.ow[1] = Judgment::range(4, 5);
  iv.set_comparisons(c);
  CHECK(Session::parse(iv.serialize()).serialize() == iv.serialize());
}

TEST_CASE("session schema violations") {
  nlohmann::json doc = testing::countries_session().to_json();
  doc["schema"] = 2;
  CHECK_THROWS_AS(Session::from_json(doc), ValidationError);
  doc["schema"] = kSessionSchema;
  doc["extra"] = true;
  CHECK_THROWS_AS(Session::from_json(doc), ValidationError);
  CHECK_THROWS_AS(Session::parse("{not json"), ValidationError);
  CHECK_THROWS_AS(Session::parse("[]"), ValidationError);
}

TEST_CASE("cache stamps follow the inputs") {
  Session s = testing::countries_session();
  s.store(Stage::kConsistency, {{"ordinal_ratio", 0.2}});
  s.store(Stage::kSolve, {{"xi_star", 0.1}});
  s.store(Stage::kRefset, {{"selected", 3}});
  CHECK(s.cached(Stage::kConsistency) != nullptr);

  auto c = *s.comparisons;
  c.bo[3] = Judgment::real(4);
  c.ow[3] = Judgment::real(3);
  s.set_comparisons(c);
  CHECK(s.cached(Stage::kConsistency) == nullptr);
  CHECK(s.cached(Stage::kSolve) == nullptr);
  CHECK(s.cached(Stage::kRefset) != nullptr);
  s.invalidate_stale();
  CHECK_FALSE(s.cache.contains(to_string(Stage::kSolve)));
  CHECK(s.cache.contains(to_string(Stage::kRefset)));

  s.segments = {3, 3};
  CHECK(s.cached(Stage::kRefset) == nullptr);
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
}

TEST_CASE("workflow errors name the missing input") {
  Session empty;
  CHECK_THROWS_AS(empty.require_matrix(), WorkflowError);
  Session s;
  s.matrix = parse_matrix_csv(testing::kLinearCsv);
  s.segments = {1};
  CHECK_THROWS_AS(s.comparison_set(), WorkflowError);
  CHECK_THROWS_AS(s.set_reference({"A", "Z"}), ValidationError);
  CHECK_FALSE(s.set_reference({"A", "B"}));
  StoredComparisons bad{"A", "B", {Judgment::real(1)}, {Judgment::real(2), Judgment::real(1)}};
  CHECK_THROWS_AS(s.set_comparisons(bad), ValidationError);
  CHECK_FALSE(s.comparisons.has_value());
  StoredComparisons good{"A", "B", {Judgment::real(1), Judgment::real(2)},
                         {Judgment::real(2), Judgment::real(1)}};
  s.set_comparisons(good);
  CHECK(s.comparison_set().size() == 2);
  CHECK(s.set_reference({"A", "C"}));
  CHECK_FALSE(s.comparisons.has_value());
}

TEST_CASE("atomic save and load") {
  const fs::path path = scratch("session.json");
  Session s = testing::linear_session();
  s.save(path.string());
  CHECK_FALSE(fs::exists(path.string() + ".tmp"));
  CHECK(read_file(path.string()) == s.serialize());
  CHECK(Session::load(path.string()).serialize() == s.serialize());
  write_file_atomic(path.string(), "x");
  CHECK(read_file(path.string()) == "x");
  CHECK_THROWS_AS(read_file((path.parent_path() / "missing.json").string()), ValidationError);
  CHECK_THROWS_AS(write_file_atomic((path.parent_path() / "no" / "dir.json").string(), "x"),
                  ValidationError);
  fs::remove_all(path.parent_path());
}
