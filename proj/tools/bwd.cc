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

// bwd: command-line front end of the best-worst disaggregation workflow.

#include <csignal>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bwd/disagg.h"
#include "bwd/error.h"
#include "bwd/io.h"
#include "bwd/pipeline.h"
#include "bwd/service.h"
#include "bwd/session.h"

namespace {

enum ExitCode { kOk = 0, kValidation = 1, kInfeasible = 2, kInternal = 3 };

std::vector<bwd::Judgment> parse_judgments(const std::string& text) {
  std::vector<bwd::Judgment> out;
  std::stringstream in(text);
  std::string cell;
  while (std::getline(in, cell, ',')) {
    try {
      const auto colon = cell.find(':');
      if (colon == std::string::npos) {
        out.push_back(bwd::Judgment::real(std::stod(cell)));
      } else {
        out.push_back(bwd::Judgment::range(std::stod(cell.substr(0, colon)),
                                           std::stod(cell.substr(colon + 1))));
      }
    } catch (const std::logic_error&) {
      throw bwd::ValidationError("bad judgment '" + cell + "'; use a or lo:hi");
    }
  }
  return out;
}

void emit(const bwd::Report& r, bool as_json) {
  if (as_json) {
    std::cout << r.data.dump(2) << '\n';
  } else {
    std::cout << r.text;
  }
}

bwd::Service* g_service = nullptr;

void on_signal(int) {
  if (g_service != nullptr) g_service->stop();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Best-worst disaggregation: value functions from best/worst judgments"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "Print reports as JSON");

  std::string session_path;
  std::string matrix_path;
  int segments = 0;
  int coverage = 1;
  std::vector<std::string> forbid;
  std::vector<std::string> add;
  auto* refset = app.add_subcommand("refset", "Select a reference set");
  refset->add_option("--matrix", matrix_path, "Performance matrix CSV")->check(CLI::ExistingFile);
  refset->add_option("--session", session_path, "Session file to create or update");
  refset->add_option("--segments", segments, "Segments per criterion");
  refset->add_option("--coverage", coverage, "Required coverage b per segment");
  refset->add_option("--forbid", forbid, "Ids that may not be selected")->delimiter(',');
  refset->add_option("--add", add, "Ids appended to the selection")->delimiter(',');

  std::vector<std::string> reference;
  std::string best;
  std::string worst;
  std::string bo;
  std::string ow;
  auto* compare = app.add_subcommand("compare", "Store best-to-others and others-to-worst judgments");
  compare->add_option("--session", session_path)->required();
  compare->add_option("--reference", reference, "Reference ids (defaults to the session's)")
      ->delimiter(',');
  compare->add_option("--best", best)->required();
  compare->add_option("--worst", worst)->required();
  compare->add_option("--bo", bo, "Comma-separated, aligned with the reference; lo:hi for intervals")
      ->required();
  compare->add_option("--ow", ow)->required();

  std::string thresholds_path;
  auto* check = app.add_subcommand("check", "Consistency ratios, verdicts and revision ranges");
  check->add_option("--session", session_path)->required();
  check->add_option("--thresholds", thresholds_path, "CSV of size,a_bw,threshold")
      ->check(CLI::ExistingFile);

  std::string dump_lp;
  auto* solve = app.add_subcommand("solve", "Fit the value model (BWD or interval BWD)");
  solve->add_option("--session", session_path)->required();
  solve->add_option("--dump-lp", dump_lp, "Write the deviation program in LP format");

  bool skip_necessary = false;
  std::string csv_path;
  auto* ranks = app.add_subcommand("ranks", "Extreme ranks and imprecision index");
  ranks->add_option("--session", session_path)->required();
  ranks->add_flag("--skip-necessary", skip_necessary, "Skip the pairwise necessary relation");
  ranks->add_option("--csv", csv_path, "Also write rank ranges to this CSV file");

  std::string out_path;
  auto* hasse = app.add_subcommand("hasse", "Hasse diagram of the necessary relation (DOT)");
  hasse->add_option("--session", session_path)->required();
  hasse->add_option("--out", out_path, "DOT output file (stdout when omitted)");

  int port = 8080;
  bwd::ServiceOptions service_options;
  auto* serve = app.add_subcommand("serve", "Run the HTTP service");
  serve->add_option("--port", port);
  serve->add_option("--data-dir", service_options.data_dir);
  serve->add_option("--static", service_options.static_dir, "UI bundle served at /");
  serve->add_option("--host", service_options.host);
  serve->add_option("--time-budget", service_options.solve_budget_seconds,
                    "Seconds a solve request waits before answering 202");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kValidation;
  }

  try {
    if (serve->parsed()) {
      bwd::Service service(service_options);
      const int bound = service.bind(port);
      if (bound < 0) {
        std::cerr << "error: cannot bind " << service_options.host << ':' << port << '\n';
        return kValidation;
      }
      g_service = &service;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      std::cerr << "serving on http://" << service_options.host << ':' << bound << '\n';
      const bool ok = service.run();
      g_service = nullptr;
      return ok ? kOk : kInternal;
    }

    bwd::Session session;
    if (refset->parsed()) {
      if (matrix_path.empty() && session_path.empty()) {
        throw bwd::ValidationError("refset needs --matrix or --session");
      }
      if (!session_path.empty() && !matrix_path.empty()) {
        std::ifstream probe(session_path);
        if (probe) session = bwd::Session::load(session_path);
      } else if (!session_path.empty()) {
        session = bwd::Session::load(session_path);
      }
      if (!matrix_path.empty()) {
        bwd::PerformanceMatrix m = bwd::read_matrix_csv(matrix_path);
        if (!session.matrix || !(bwd::matrix_to_json(*session.matrix) == bwd::matrix_to_json(m))) {
          session.matrix = std::move(m);
          session.segments.clear();
          session.reference.clear();
          session.comparisons.reset();
        }
        session.matrix_source = matrix_path;
      }
      bwd::RefsetOptions opt;
      if (segments != 0) opt.segments = segments;
      else if (session.segments.empty()) opt.segments = 1;
      opt.coverage = coverage;
      opt.forbid = forbid;
      opt.add = add;
      const bwd::Report r = bwd::run_refset(session, opt);
      ++session.revision;
      emit(r, as_json);
    } else {
      session = bwd::Session::load(session_path);
      if (compare->parsed()) {
        if (!reference.empty() && session.set_reference(reference)) {
          std::cerr << "warning: reference set changed; previous comparisons were discarded\n";
        }
        session.set_comparisons({best, worst, parse_judgments(bo), parse_judgments(ow)});
        ++session.revision;
        session.invalidate_stale();
        std::cout << "stored " << session.comparisons->bo.size()
                  << " best-to-others and others-to-worst judgments\n";
      } else if (check->parsed()) {
        if (!thresholds_path.empty()) {
          session.thresholds = bwd::read_thresholds_csv(thresholds_path);
          ++session.revision;
        }
        emit(bwd::run_check(session), as_json);
      } else if (solve->parsed()) {
        if (!dump_lp.empty()) {
          bwd::write_file_atomic(
              dump_lp, bwd::opt::to_lp_format(bwd::deviation_program(
                                                  session.require_matrix(), session.grid(),
                                                  session.comparison_set()),
                                              "bwd_deviation"));
        }
        emit(bwd::run_solve(session), as_json);
      } else if (ranks->parsed()) {
        const bwd::Report r = bwd::run_ranks(session, skip_necessary);
        emit(r, as_json);
        if (!csv_path.empty()) {
          std::string csv = "id,best_rank,worst_rank\n";
          for (const auto& g : r.data.at("ranges")) {
            csv += g.at("id").get<std::string>() + ',' + g.at("best_rank").dump() + ',' +
                   g.at("worst_rank").dump() + '\n';
          }
          bwd::write_file_atomic(csv_path, csv);
        }
      } else if (hasse->parsed()) {
        const bwd::Report r = bwd::run_hasse(session);
        if (out_path.empty()) {
          std::cout << r.text;
        } else {
          bwd::write_file_atomic(out_path, r.text);
        }
      }
    }
    if (!session_path.empty()) session.save(session_path);
    return kOk;
  } catch (const bwd::InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kInfeasible;
  } catch (const bwd::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
}
