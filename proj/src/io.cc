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

#include "bwd/io.h"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include "bwd/error.h"

namespace bwd {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const std::string& source, int line, const std::string& what) {
  throw ValidationError(source + ":" + std::to_string(line) + ": " + what);
}

// Comma-separated fields; double quotes group commas and "" escapes a quote.
std::vector<std::string> split(const std::string& line, const std::string& source,
                               int number) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t k = 0; k < line.size(); ++k) {
    const char c = line[k];
    if (quoted) {
      if (c == '"' && k + 1 < line.size() && line[k + 1] == '"') {
        cur += '"';
        ++k;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (quoted) fail(source, number, "unterminated quote");
  fields.push_back(trim(cur));
  return fields;
}

double number(const std::string& cell, const std::string& source, int line) {
  double v = 0.0;
  const char* end = cell.data() + cell.size();
  const auto [ptr, ec] = std::from_chars(cell.data(), end, v);
  if (cell.empty() || ec != std::errc() || ptr != end || !std::isfinite(v)) {
    fail(source, line, "not a number: '" + cell + "'");
  }
  return v;
}

struct Line {
  int number;
  std::vector<std::string> fields;
};

std::vector<Line> lines_of(const std::string& text, const std::string& source) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string raw;
  int n = 0;
  while (std::getline(in, raw)) {
    ++n;
    if (trim(raw).empty()) continue;
    out.push_back({n, split(raw, source, n)});
  }
  return out;
}

}  // namespace

PerformanceMatrix parse_matrix_csv(const std::string& text, const std::string& source) {
  const std::vector<Line> lines = lines_of(text, source);
  if (lines.empty()) fail(source, 1, "empty file");
  const Line& header = lines[0];
  if (header.fields.size() < 2) fail(source, header.number, "header needs id and criteria");
  const std::size_t n = header.fields.size() - 1;
  std::vector<std::string> names(header.fields.begin() + 1, header.fields.end());
  std::vector<Direction> directions(n, Direction::kBenefit);
  std::vector<std::pair<double, double>> ranges;
  int ranges_line = 0;
  std::vector<Alternative> alternatives;
  std::set<std::string> seen;
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const Line& line = lines[r];
    if (line.fields.size() != n + 1) {
      fail(source, line.number, "expected " + std::to_string(n + 1) + " fields, found " +
                                    std::to_string(line.fields.size()));
    }
    const std::string& key = line.fields[0];
    if (key == "#direction") {
      for (std::size_t j = 0; j < n; ++j) {
        try {
          directions[j] = parse_direction(line.fields[j + 1]);
        } catch (const ValidationError& e) {
          fail(source, line.number, e.what());
        }
      }
    } else if (key == "#range") {
      ranges_line = line.number;
      for (std::size_t j = 0; j < n; ++j) {
        const std::string& cell = line.fields[j + 1];
        const auto colon = cell.find(':');
        if (colon == std::string::npos) fail(source, line.number, "range must be lo:hi");
        ranges.emplace_back(number(trim(cell.substr(0, colon)), source, line.number),
                            number(trim(cell.substr(colon + 1)), source, line.number));
      }
    } else if (!key.empty() && key[0] == '#') {
      fail(source, line.number, "unknown metadata row " + key);
    } else {
      if (key.empty()) fail(source, line.number, "empty id");
      if (!seen.insert(key).second) fail(source, line.number, "duplicate id '" + key + "'");
      Alternative a{key, {}};
      for (std::size_t j = 0; j < n; ++j) {
        a.levels.push_back(number(line.fields[j + 1], source, line.number));
      }
      alternatives.push_back(std::move(a));
    }
  }
  try {
    if (ranges.empty()) {
      return PerformanceMatrix::with_observed_ranges(names, directions,
                                                     std::move(alternatives));
    }
    std::vector<Criterion> criteria(n);
    for (std::size_t j = 0; j < n; ++j) {
      criteria[j] = {names[j], directions[j], ranges[j].first, ranges[j].second};
    }
    return PerformanceMatrix(std::move(criteria), std::move(alternatives));
  } catch (const ValidationError& e) {
    fail(source, ranges_line ? ranges_line : header.number, e.what());
  }
}

PerformanceMatrix read_matrix_csv(const std::string& path) {
  return parse_matrix_csv(read_file(path), path);
}

ThresholdTable parse_thresholds_csv(const std::string& text, const std::string& source) {
  ThresholdTable table;
  const std::vector<Line> lines = lines_of(text, source);
  for (std::size_t r = 0; r < lines.size(); ++r) {
    const Line& line = lines[r];
    if (line.fields.size() != 3) fail(source, line.number, "expected size,a_bw,threshold");
    if (r == 0 && line.fields[0] == "size") continue;
    const double size = number(line.fields[0], source, line.number);
    if (size < 2 || size != std::floor(size)) {
      fail(source, line.number, "size must be an integer >= 2");
    }
    try {
      table.set(static_cast<std::size_t>(size), number(line.fields[1], source, line.number),
                number(line.fields[2], source, line.number));
    } catch (const ValidationError& e) {
      fail(source, line.number, e.what());
    }
  }
  return table;
}

ThresholdTable read_thresholds_csv(const std::string& path) {
  return parse_thresholds_csv(read_file(path), path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path + ": " + std::strerror(errno));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError("cannot write " + tmp + ": " + std::strerror(errno));
    out << content;
    out.flush();
    if (!out) throw ValidationError("write failed for " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    const std::string why = std::strerror(errno);
    std::remove(tmp.c_str());
    throw ValidationError("cannot rename " + tmp + " to " + path + ": " + why);
  }
}

}  // namespace bwd
