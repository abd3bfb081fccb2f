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

#ifndef BWD_PIPELINE_H_
#define BWD_PIPELINE_H_

// Workflow commands shared by the CLI and the HTTP service. Each command reads
// its inputs from a session, caches its full-precision output there, and
// returns a human-readable report (6 significant digits) plus the same data
// as JSON.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bwd/session.h"

namespace bwd {

struct Report {
  std::string text;
  nlohmann::json data;
  std::vector<std::string> warnings;
};

struct RefsetOptions {
  std::optional<int> segments;  // uniform count; keeps the session's when absent
  int coverage = 1;
  std::vector<std::string> forbid;
  std::vector<std::string> add;
};

// Throws InfeasibleError with the diagnosis when no selection exists.
Report run_refset(Session& session, const RefsetOptions& options);
Report run_check(Session& session);
Report run_solve(Session& session);
Report run_ranks(Session& session, bool skip_necessary = false);
// Report text is the DOT document.
Report run_hasse(Session& session);

// Everything known after solving: deviation, model, ranking and, when
// computed, the robustness analysis. Throws WorkflowError before solve.
nlohmann::json results(const Session& session);

// %.6g
std::string fmt6(double v);

}  // namespace bwd

#endif  // BWD_PIPELINE_H_
