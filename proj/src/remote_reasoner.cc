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

#include "islandes/remote_reasoner.h"

#include <algorithm>
#include <regex>
#include <stdexcept>
#include <utility>

#include "httplib.h"
#include "json.hpp"

namespace islandes {

const char* const kDefaultPromptTemplate =
    "You are an expert at abstract visual reasoning puzzles. Each grid is "
    "written row by row, one digit (0-9) per cell, with '|' between rows.\n"
    "Study the example transformations, infer the rule, and apply it to the "
    "test input. Reply with the output grid only, in the same notation.\n\n"
    "Examples:\n{train_pairs}\n"
    "Test input:\n{test_input}\n"
    "Test output:";

const char* RemoteFailureKindName(RemoteFailureKind kind) {
  switch (kind) {
    case RemoteFailureKind::kTransport:
      return "transport";
    case RemoteFailureKind::kHttpStatus:
      return "http-status";
    case RemoteFailureKind::kMissingField:
      return "missing-field";
  }
  return "unknown";
}

RemoteError::RemoteError(RemoteFailureKind kind, int attempts,
                         const std::string& detail)
    : ReasonerError(std::string("remote reasoner failure (") +
                    RemoteFailureKindName(kind) + "): " + detail),
      kind_(kind),
      attempts_(attempts) {}

namespace {

void ReplaceAll(std::string& text, std::string_view from,
                std::string_view to) {
  for (std::size_t pos = text.find(from); pos != std::string::npos;
       pos = text.find(from, pos + to.size())) {
    text.replace(pos, from.size(), to);
  }
}

std::string Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

struct Endpoint {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

Endpoint SplitEndpoint(const std::string& url) {
  static const std::regex kUrl(R"(^(http://[^/?#]+)(/[^#]*)?$)");
  std::smatch match;
  if (!std::regex_match(url, match, kUrl)) {
    throw std::invalid_argument("unsupported remote endpoint '" + url +
                                "' (expected http://host[:port][/path])");
  }
  return Endpoint{match[1].str(), match[2].matched ? match[2].str() : "/"};
}

}  // namespace

std::string RenderPrompt(std::string_view prompt_template, const ArcTask& task,
                         const Grid& test_input) {
  std::string pairs;
  for (const GridPair& pair : task.train) {
    pairs += SerializeGrid(pair.input);
    pairs += " -> ";
    pairs += SerializeGrid(pair.output);
    pairs += '\n';
  }
  const std::string input = SerializeGrid(test_input);
  std::string prompt(prompt_template);
  // Substituted text never contains braces, so the second pass cannot match
  // inside the first substitution.
  ReplaceAll(prompt, "{train_pairs}", pairs);
  ReplaceAll(prompt, "{test_input}", input);
  return prompt;
}

std::string RemotePredict(const RemoteReasonerSpec& spec, const ArcTask& task,
                          const Grid& test_input) {
  const Endpoint endpoint = SplitEndpoint(spec.endpoint);
  const std::string body =
      nlohmann::json{{"prompt", RenderPrompt(spec.prompt_template, task,
                                             test_input)}}
          .dump();

  httplib::Client client(endpoint.origin);
  const auto seconds =
      std::chrono::duration_cast<std::chrono::seconds>(spec.timeout);
  const auto micros = std::chrono::duration_cast<std::chrono::microseconds>(
      spec.timeout - seconds);
  client.set_connection_timeout(seconds.count(), micros.count());
  client.set_read_timeout(seconds.count(), micros.count());
  client.set_write_timeout(seconds.count(), micros.count());

  const int max_attempts = 1 + std::max(0, spec.max_retries);
  for (int attempt = 1;; ++attempt) {
    auto result = client.Post(endpoint.path, body, "application/json");
    if (!result) {
      if (attempt < max_attempts) continue;
      throw RemoteError(RemoteFailureKind::kTransport, attempt,
                        httplib::to_string(result.error()));
    }
    if (result->status < 200 || result->status >= 300) {
      throw RemoteError(RemoteFailureKind::kHttpStatus, attempt,
                        "status " + std::to_string(result->status));
    }
    const auto reply = nlohmann::json::parse(result->body, nullptr,
                                             /*allow_exceptions=*/false);
    if (!reply.is_object() || !reply.contains("answer") ||
        !reply["answer"].is_string()) {
      throw RemoteError(RemoteFailureKind::kMissingField, attempt,
                        "reply has no string \"answer\"");
    }
    return Trim(reply["answer"].get<std::string>());
  }
}

RemoteReasoner::RemoteReasoner(RemoteReasonerSpec spec)
    : spec_(std::move(spec)) {
  if (spec_.timeout.count() <= 0) {
    throw std::invalid_argument("remote timeout must be positive");
  }
  SplitEndpoint(spec_.endpoint);
}

std::string RemoteReasoner::Predict(const Genotype&, const ArcTask& task,
                                    const Grid& test_input) const {
  return RemotePredict(spec_, task, test_input);
}

}  // namespace islandes
