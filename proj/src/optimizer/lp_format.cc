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

#include <cctype>
#include <cmath>
#include <sstream>
#include <string>

#include "bwd/optimizer.h"

namespace bwd::opt {
namespace {

// LP-format names may not contain spaces or start with a digit.
std::string sanitize(const std::string& name) {
  std::string out;
  for (char c : name) {
    const bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
                    c == '.' || c == '[' || c == ']';
    out += ok ? c : '_';
  }
  if (out.empty() || std::isdigit(static_cast<unsigned char>(out[0]))) {
    out = "_" + out;
  }
  return out;
}

void write_terms(std::ostringstream& os, const LinearProgram& p,
                 const LinearTerms& terms) {
  if (terms.empty()) {
    os << " 0 " << sanitize(p.variable(0).name);
    return;
  }
  bool first = true;
  for (const auto& [var, coef] : terms) {
    if (coef < 0) {
      os << " - " << -coef;
    } else {
      os << (first ? " " : " + ") << coef;
    }
    os << " " << sanitize(p.variable(var).name);
    first = false;
  }
}

}  // namespace

std::string to_lp_format(const LinearProgram& program, const std::string& title) {
  std::ostringstream os;
  os.precision(17);
  os << "\\ " << title << "\n";
  os << (program.sense() == Sense::kMinimize ? "Minimize" : "Maximize") << "\n";
  os << " obj:";
  if (program.num_variables() > 0) write_terms(os, program, program.objective());
  if (program.objective_offset() != 0.0) {
    os << (program.objective_offset() < 0 ? " - " : " + ")
       << std::abs(program.objective_offset());
  }
  os << "\nSubject To\n";
  for (const Constraint& c : program.constraints()) {
    os << " " << sanitize(c.name) << ":";
    write_terms(os, program, c.terms);
    switch (c.relation) {
      case Relation::kLessEqual:
        os << " <= ";
        break;
      case Relation::kGreaterEqual:
        os << " >= ";
        break;
      case Relation::kEqual:
        os << " = ";
        break;
    }
    os << c.rhs << "\n";
  }
  os << "Bounds\n";
  for (const Variable& v : program.variables()) {
    const std::string name = sanitize(v.name);
    if (v.type == VarType::kBinary) {
      if (v.lower == v.upper) os << " " << name << " = " << v.lower << "\n";
      continue;
    }
    const bool lo = std::isfinite(v.lower);
    const bool hi = std::isfinite(v.upper);
    if (!lo && !hi) {
      os << " " << name << " free\n";
    } else if (lo && hi) {
      os << " " << v.lower << " <= " << name << " <= " << v.upper << "\n";
    } else if (lo) {
      os << " " << name << " >= " << v.lower << "\n";
    } else {
      os << " -inf <= " << name << " <= " << v.upper << "\n";
    }
  }
  bool any_binary = false;
  for (const Variable& v : program.variables()) {
    if (v.type != VarType::kBinary) continue;
    if (!any_binary) os << "Binaries\n";
    any_binary = true;
    os << " " << sanitize(v.name) << "\n";
  }
  os << "End\n";
  return os.str();
}

}  // namespace bwd::opt
