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

#include "bwd/service.h"

#include <chrono>
#include <filesystem>
#include <future>
#include <map>
#include <mutex>
#include <random>

#include <httplib.h>
#include <json.hpp>

#include "bwd/error.h"
#include "bwd/io.h"
#include "bwd/pipeline.h"
#include "bwd/session.h"

namespace bwd {

using nlohmann::json;

namespace {

struct HttpError {
  int status;
  std::string message;
};

void send(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& message) {
  send(res, status, {{"error", message}, {"status", status}});
}

json parse_body(const httplib::Request& req) {
  if (req.body.empty()) return json::object();
  try {
    json body = json::parse(req.body);
    if (!body.is_object()) throw HttpError{400, "request body must be a JSON object"};
    return body;
  } catch (const json::parse_error& e) {
    throw HttpError{400, std::string("request body is not valid JSON: ") + e.what()};
  }
}

std::string new_session_id() {
  static std::mutex mu;
  static std::mt19937_64 rng{std::random_device{}()};
  std::lock_guard<std::mutex> lock(mu);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(rng()));
  return buf;
}

std::vector<int> segments_from(const json& v, std::size_t criteria) {
  if (v.is_number_integer()) return std::vector<int>(criteria, v.get<int>());
  if (v.is_array()) return v.get<std::vector<int>>();
  throw ValidationError("segments must be an integer or an array of integers");
}

}  // namespace

struct Service::Impl {
  ServiceOptions options;
  httplib::Server server;

  std::mutex registry_mu;
  std::map<std::string, std::shared_ptr<std::mutex>> locks;
  std::map<std::string, std::shared_future<void>> jobs;

  std::string path_of(const std::string& id) const {
    return (std::filesystem::path(options.data_dir) / (id + ".json")).string();
  }

  std::shared_ptr<std::mutex> lock_for(const std::string& id) {
    std::lock_guard<std::mutex> lock(registry_mu);
    auto& mu = locks[id];
    if (!mu) mu = std::make_shared<std::mutex>();
    return mu;
  }

  Session load(const std::string& id) const {
    const std::string path = path_of(id);
    if (!std::filesystem::exists(path)) throw HttpError{404, "unknown session " + id};
    return Session::load(path);
  }

  void save(const std::string& id, const Session& s) const { s.save(path_of(id)); }

  static void check_revision(const httplib::Request& req, const json& body,
                             const Session& s) {
    std::optional<std::uint64_t> token;
    if (req.has_header("If-Match")) {
      std::string v = req.get_header_value("If-Match");
      v.erase(std::remove(v.begin(), v.end(), '"'), v.end());
      try {
        token = std::stoull(v);
      } catch (const std::exception&) {
        throw HttpError{400, "If-Match must carry a revision number"};
      }
    } else if (body.contains("revision")) {
      if (!body["revision"].is_number_unsigned()) {
        throw HttpError{400, "revision must be a non-negative integer"};
      }
      token = body["revision"].get<std::uint64_t>();
    }
    if (token && *token != s.revision) {
      throw HttpError{409, "stale revision " + std::to_string(*token) + "; current is " +
                               std::to_string(s.revision)};
    }
  }

  static json envelope(const std::string& id, const Session& s) {
    return {{"id", id}, {"revision", s.revision}, {"session", s.to_json()}};
  }

  // Maps library errors onto status codes.
  template <typename Fn>
  static void guarded(httplib::Response& res, Fn&& fn) {
    try {
      fn();
    } catch (const HttpError& e) {
      send_error(res, e.status, e.message);
    } catch (const WorkflowError& e) {
      send_error(res, 422, e.what());
    } catch (const InfeasibleError& e) {
      send_error(res, 422, e.what());
    } catch (const ValidationError& e) {
      send_error(res, 400, e.what());
    } catch (const json::exception& e) {
      send_error(res, 400, e.what());
    } catch (const std::exception& e) {
      send_error(res, 500, e.what());
    }
  }

  void create(const httplib::Request& req, httplib::Response& res) {
    const json body = parse_body(req);
    Session s;
    if (body.contains("matrix_csv")) {
      s.matrix = parse_matrix_csv(body["matrix_csv"].get<std::string>(), "matrix_csv");
      s.matrix_source = body.value("matrix_source", std::string("upload"));
    } else if (body.contains("matrix")) {
      s.matrix = matrix_from_json(body["matrix"]);
      s.matrix_source = body.value("matrix_source", std::string("upload"));
    } else {
      throw HttpError{400, "a matrix or matrix_csv field is required"};
    }
    if (body.contains("segments")) {
      s.segments = segments_from(body["segments"], s.matrix->num_criteria());
      if (s.segments.size() != s.matrix->num_criteria()) {
        throw ValidationError("segments must list one count per criterion");
      }
      s.grid();
    }
    if (body.contains("thresholds_csv")) {
      s.thresholds = parse_thresholds_csv(body["thresholds_csv"].get<std::string>());
    }
    s.revision = 1;
    const std::string id = new_session_id();
    save(id, s);
    send(res, 201, envelope(id, s));
  }

  void get(const std::string& id, httplib::Response& res) {
    auto mu = lock_for(id);
    std::lock_guard<std::mutex> lock(*mu);
    const Session s = load(id);
    res.set_header("ETag", "\"" + std::to_string(s.revision) + "\"");
    send(res, 200, envelope(id, s));
  }

  void refset(const std::string& id, const httplib::Request& req, httplib::Response& res) {
    const json body = parse_body(req);
    auto mu = lock_for(id);
    std::lock_guard<std::mutex> lock(*mu);
    Session s = load(id);
    check_revision(req, body, s);
    RefsetOptions opt;
    if (body.contains("segments")) opt.segments = body["segments"].get<int>();
    opt.coverage = body.value("coverage", 1);
    opt.forbid = body.value("forbid", std::vector<std::string>{});
    opt.add = body.value("add", std::vector<std::string>{});
    const Report r = run_refset(s, opt);
    ++s.revision;
    save(id, s);
    send(res, 200, {{"id", id}, {"revision", s.revision}, {"report", r.data}, {"text", r.text}});
  }

  void comparisons(const std::string& id, const httplib::Request& req,
                   httplib::Response& res) {
    const json body = parse_body(req);
    auto mu = lock_for(id);
    std::lock_guard<std::mutex> lock(*mu);
    Session s = load(id);
    check_revision(req, body, s);
    std::vector<std::string> warnings;
    if (body.contains("reference")) {
      if (s.set_reference(body["reference"].get<std::vector<std::string>>())) {
        warnings.push_back("reference set changed; previous comparisons were discarded");
      }
    }
    if (s.reference.empty()) throw WorkflowError("select a reference set before comparing");
    StoredComparisons c;
    c.best = body.at("best").get<std::string>();
    c.worst = body.at("worst").get<std::string>();
    for (const json& j : body.at("bo")) c.bo.push_back(judgment_from_json(j));
    for (const json& j : body.at("ow")) c.ow.push_back(judgment_from_json(j));
    s.set_comparisons(std::move(c));
    ++s.revision;
    s.invalidate_stale();
    save(id, s);
    json out = envelope(id, s);
    out["warnings"] = warnings;
    send(res, 200, out);
  }

  void consistency(const std::string& id, httplib::Response& res) {
    auto mu = lock_for(id);
    std::lock_guard<std::mutex> lock(*mu);
    Session s = load(id);
    const Report r = run_check(s);
    save(id, s);
    send(res, 200, {{"id", id}, {"revision", s.revision}, {"report", r.data}, {"text", r.text}});
  }

  // False while a job for the session is running; rethrows the error of a
  // finished job.
  bool settle_job(const std::string& id) {
    std::shared_future<void> job;
    {
      std::lock_guard<std::mutex> lock(registry_mu);
      auto it = jobs.find(id);
      if (it == jobs.end()) return true;
      job = it->second;
      if (job.wait_for(std::chrono::seconds(0)) != std::future_status::ready) return false;
      jobs.erase(it);
    }
    job.get();
    return true;
  }

  void solve(const std::string& id, const httplib::Request& req, httplib::Response& res) {
    const json body = parse_body(req);
    const double budget = body.value("time_budget", options.solve_budget_seconds);
    const bool skip_necessary = body.value("skip_necessary", false);
    std::shared_future<void> job;
    {
      auto mu = lock_for(id);
      std::lock_guard<std::mutex> lock(*mu);
      Session s = load(id);
      check_revision(req, body, s);
      s.comparison_set();
      std::lock_guard<std::mutex> reg(registry_mu);
      auto it = jobs.find(id);
      if (it != jobs.end()) {
        job = it->second;
      } else {
        job = std::async(std::launch::async, [this, id, s, skip_necessary, mu]() mutable {
                run_solve(s);
                run_ranks(s, skip_necessary);
                std::lock_guard<std::mutex> lock(*mu);
                Session current = load(id);
                if (current.input_hash(Stage::kSolve) == s.input_hash(Stage::kSolve)) {
                  current.cache = s.cache;
                  save(id, current);
                }
              }).share();
        jobs[id] = job;
      }
    }
    const auto wait = std::chrono::duration<double>(std::max(0.0, budget));
    if (job.wait_for(wait) != std::future_status::ready) {
      res.set_header("Location", "/sessions/" + id + "/results");
      send(res, 202, {{"id", id}, {"status", "running"},
                      {"location", "/sessions/" + id + "/results"}});
      return;
    }
    results(id, res);
  }

  void results(const std::string& id, httplib::Response& res) {
    if (!settle_job(id)) {
      res.set_header("Location", "/sessions/" + id + "/results");
      send(res, 202, {{"id", id}, {"status", "running"},
                      {"location", "/sessions/" + id + "/results"}});
      return;
    }
    auto mu = lock_for(id);
    std::lock_guard<std::mutex> lock(*mu);
    const Session s = load(id);
    json out = bwd::results(s);
    send(res, 200, {{"id", id}, {"revision", s.revision}, {"status", "done"}, {"results", out}});
  }

  void routes() {
    const std::string sid = R"(/sessions/([0-9a-f]{16}))";
    server.Post("/sessions", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] { create(req, res); });
    });
    server.Get(sid, [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] { get(req.matches[1], res); });
    });
    server.Post(sid + "/refset", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] { refset(req.matches[1], req, res); });
    });
    server.Put(sid + "/comparisons",
               [this](const httplib::Request& req, httplib::Response& res) {
                 guarded(res, [&] { comparisons(req.matches[1], req, res); });
               });
    server.Get(sid + "/consistency",
               [this](const httplib::Request& req, httplib::Response& res) {
                 guarded(res, [&] { consistency(req.matches[1], res); });
               });
    server.Post(sid + "/solve", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] { solve(req.matches[1], req, res); });
    });
    server.Get(sid + "/results", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] { results(req.matches[1], res); });
    });
    if (!options.static_dir.empty()) {
      if (!server.set_mount_point("/", options.static_dir)) {
        throw ValidationError("static directory not found: " + options.static_dir);
      }
    } else {
      server.Get("/", [](const httplib::Request&, httplib::Response& res) {
        res.set_content(
            "<!doctype html><title>bwd</title><p>BWD service. API under /sessions.</p>",
            "text/html");
      });
    }
  }

  ~Impl() {
    server.stop();
    std::lock_guard<std::mutex> lock(registry_mu);
    for (auto& [_, job] : jobs) job.wait();
  }
};

Service::Service(ServiceOptions options) : impl_(std::make_unique<Impl>()) {
  impl_->options = std::move(options);
  std::filesystem::create_directories(impl_->options.data_dir);
  impl_->routes();
}

Service::~Service() = default;

int Service::bind(int port) {
  if (port == 0) return impl_->server.bind_to_any_port(impl_->options.host);
  return impl_->server.bind_to_port(impl_->options.host, port) ? port : -1;
}

bool Service::run() { return impl_->server.listen_after_bind(); }

void Service::stop() { impl_->server.stop(); }

}  // namespace bwd
