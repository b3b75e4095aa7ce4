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

#ifndef ISLANDES_REMOTE_REASONER_H_
#define ISLANDES_REMOTE_REASONER_H_

#include <chrono>
#include <string>
#include <string_view>

#include "islandes/error.h"
#include "islandes/reasoner.h"

namespace islandes {

// Default request template. {train_pairs} and {test_input} are replaced with
// the serialized grids.
extern const char* const kDefaultPromptTemplate;

struct RemoteReasonerSpec {
  std::string endpoint;  // http://host[:port][/path]
  std::chrono::milliseconds timeout{30000};
  std::string prompt_template = kDefaultPromptTemplate;
  int max_retries = 2;
};

enum class RemoteFailureKind {
  kTransport,     // connection refused, reset or timed out
  kHttpStatus,    // response status outside 2xx
  kMissingField,  // body is not JSON or has no string "answer"
};

const char* RemoteFailureKindName(RemoteFailureKind kind);

class RemoteError : public ReasonerError {
 public:
  RemoteError(RemoteFailureKind kind, int attempts, const std::string& detail);

  RemoteFailureKind kind() const { return kind_; }
  // Requests sent before giving up, including retries.
  int attempts() const { return attempts_; }

 private:
  RemoteFailureKind kind_;
  int attempts_;
};

// Fills the template: train pairs as "input -> output" lines, then the test
// input.
std::string RenderPrompt(std::string_view prompt_template, const ArcTask& task,
                         const Grid& test_input);

// POSTs {"prompt": ...} to the endpoint and returns the trimmed "answer".
// Transport failures are retried up to spec.max_retries times; status and
// body failures are not. Throws RemoteError.
std::string RemotePredict(const RemoteReasonerSpec& spec, const ArcTask& task,
                          const Grid& test_input);

// Scores a remote model. The genotype is ignored: remote models expose no
// parameters and cannot be evolved.
class RemoteReasoner : public Reasoner {
 public:
  explicit RemoteReasoner(RemoteReasonerSpec spec);

  std::string Predict(const Genotype& genotype, const ArcTask& task,
                      const Grid& test_input) const override;
  bool concurrency_safe() const override { return true; }

  const RemoteReasonerSpec& spec() const { return spec_; }

 private:
  RemoteReasonerSpec spec_;
};

}  // namespace islandes

#endif  // ISLANDES_REMOTE_REASONER_H_
