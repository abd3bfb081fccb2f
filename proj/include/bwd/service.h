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

#ifndef BWD_SERVICE_H_
#define BWD_SERVICE_H_

// HTTP/JSON front end over a directory of session files.

#include <memory>
#include <string>

namespace bwd {

struct ServiceOptions {
  std::string data_dir = ".";
  std::string static_dir;  // served at "/" when set
  std::string host = "127.0.0.1";
  double solve_budget_seconds = 30.0;
};

class Service {
 public:
  explicit Service(ServiceOptions options);
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  // Binds to port (0 picks a free one) and returns the bound port, or -1.
  int bind(int port);
  // Serves until stop(); returns false if the server failed.
  bool run();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace bwd

#endif  // BWD_SERVICE_H_
