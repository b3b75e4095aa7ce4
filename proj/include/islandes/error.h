// Copyright 2026 The islandes Authors.
//
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

#ifndef ISLANDES_ERROR_H_
#define ISLANDES_ERROR_H_

#include <stdexcept>
#include <string>

namespace islandes {

// Malformed task documents, grids or task-set manifests.
class TaskFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid or inconsistent configuration. The message names the offending key.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Checkpoint or array file failed a length, hash or version check.
class IntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A reasoner could not produce an answer for one test input.
class ReasonerError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace islandes

#endif  // ISLANDES_ERROR_H_
