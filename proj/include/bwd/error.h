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

#ifndef BWD_ERROR_H_
#define BWD_ERROR_H_

#include <stdexcept>
#include <string>

namespace bwd {

// Bad user input: malformed files, invariant violations, out-of-scale judgments.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A level outside the attribute range was passed to a value function.
class OutOfRangeError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// A command was issued before the data it depends on exists.
class WorkflowError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// A well-formed problem that admits no solution (e.g. an uncoverable reference set).
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Something that cannot happen for valid input did happen; signals a bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace bwd

#endif  // BWD_ERROR_H_
