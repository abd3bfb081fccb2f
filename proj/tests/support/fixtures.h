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

#ifndef BWD_TESTS_SUPPORT_FIXTURES_H_
#define BWD_TESTS_SUPPORT_FIXTURES_H_

// Small sessions shared by the workflow tests.

#include <string>
#include <vector>

#include "bwd/io.h"
#include "bwd/session.h"

namespace bwd::testing {

// Five countries plus two extras on two criteria.
inline const char* kCountriesCsv =
    "id,customs,tracking\n"
    "#direction,benefit,benefit\n"
    "#range,1:5,1:5\n"
    "Estonia,3.6,3.9\n"
    "Hungary,3.3,3.6\n"
    "Latvia,2.8,3.2\n"
    "Greece,3.1,3.3\n"
    "Moldova,2.3,2.5\n"
    "Austria,3.7,4.1\n"
    "Malta,2.9,3.0\n";

// One linear criterion; V = x / 8 fits the comparisons exactly.
inline const char* kLinearCsv =
    "id,x\n"
    "#range,0:8\n"
    "A,8\n"
    "B,4\n"
    "C,2\n"
    "D,1\n"
    "E,6\n";

inline StoredComparisons table_comparisons(const std::vector<double>& bo,
                                           const std::vector<double>& ow) {
  StoredComparisons c;
  c.best = "Estonia";
  c.worst = "Moldova";
  for (double v : bo) c.bo.push_back(Judgment::real(v));
  for (double v : ow) c.ow.push_back(Judgment::real(v));
  return c;
}

inline Session countries_session(const std::vector<double>& bo = {1, 3, 4, 5, 8},
                                 const std::vector<double>& ow = {8, 5, 3, 4, 1}) {
  Session s;
  s.matrix_source = "countries.csv";
  s.matrix = parse_matrix_csv(kCountriesCsv, "countries.csv");
  s.segments = {2, 2};
  s.set_reference({"Estonia", "Hungary", "Latvia", "Greece", "Moldova"});
  s.set_comparisons(table_comparisons(bo, ow));
  return s;
}

inline Session linear_session() {
  Session s;
  s.matrix_source = "linear.csv";
  s.matrix = parse_matrix_csv(kLinearCsv, "linear.csv");
  s.segments = {1};
  s.set_reference({"A", "B", "D"});
  StoredComparisons c;
  c.best = "A";
  c.worst = "D";
  c.bo = {Judgment::real(1), Judgment::real(2), Judgment::real(8)};
  c.ow = {Judgment::real(8), Judgment::real(4), Judgment::real(1)};
  s.set_comparisons(c);
  return s;
}

}  // namespace bwd::testing

#endif  // BWD_TESTS_SUPPORT_FIXTURES_H_
