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

#include <gtest/gtest.h>

#include "islandes/scoring.h"
#include "json.hpp"
#include "support/test_support.h"

namespace islandes {
namespace {

using testing::MockEndpoint;

Genotype Unused() { return Genotype::Zeros(testing::Partition({{"u", 1}})); }

RemoteReasonerSpec SpecFor(const std::string& url, int retries = 2) {
  RemoteReasonerSpec spec;
  spec.endpoint = url;
  spec.timeout = std::chrono::milliseconds(2000);
  spec.max_retries = retries;
  return spec;
}

TEST(RenderPromptTest, SubstitutesPlaceholders) {
  const ArcTask task = testing::IdentityTask1x1();
  const std::string prompt = RenderPrompt(
      "E:\n{train_pairs}T:{test_input}", task, Grid::FromRows({{4, 5}}));
  EXPECT_EQ(prompt, "E:\n3 -> 3\nT:45");
  const std::string standard =
      RenderPrompt(kDefaultPromptTemplate, task, Grid::FromRows({{4}}));
  EXPECT_EQ(standard.find("{train_pairs}"), std::string::npos);
  EXPECT_EQ(standard.find("{test_input}"), std::string::npos);
  EXPECT_NE(standard.find("3 -> 3"), std::string::npos);
}

TEST(RemotePredictTest, EchoTruthScoresOne) {
  const ArcTask task = testing::IdentityTask2x2();
  // The test input is the truth for an identity task.
  MockEndpoint endpoint([&](const std::string& prompt) {
    EXPECT_NE(prompt.find(SerializeGrid(task.test[0].input)),
              std::string::npos);
    return std::make_pair(
        200, nlohmann::json{{"answer", "  " + SerializeGrid(task.test[0].output) +
                                           "\n"}}
                 .dump());
  });
  RemoteReasoner reasoner(SpecFor(endpoint.url()));
  const TaskEvaluation e = Evaluate(reasoner, Unused(), task);
  EXPECT_EQ(e.score, 1.0);
  EXPECT_EQ(e.failures, 0u);
  EXPECT_EQ(endpoint.requests(), 1);
}

TEST(RemotePredictTest, MissingAnswerIsDistinctFailure) {
  MockEndpoint endpoint(
      [](const std::string&) { return std::make_pair(200, std::string("{}")); });
  const ArcTask task = testing::IdentityTask1x1();
  try {
    RemotePredict(SpecFor(endpoint.url()), task, task.test[0].input);
    FAIL();
  } catch (const RemoteError& e) {
    EXPECT_EQ(e.kind(), RemoteFailureKind::kMissingField);
    EXPECT_EQ(e.attempts(), 1);
  }
  RemoteReasoner reasoner(SpecFor(endpoint.url()));
  const TaskEvaluation e = Evaluate(reasoner, Unused(), task);
  EXPECT_EQ(e.score, 0.0);
  EXPECT_EQ(e.failures, 1u);
}

TEST(RemotePredictTest, NonSuccessStatusIsNotRetried) {
  MockEndpoint endpoint([](const std::string&) {
    return std::make_pair(503, std::string(R"({"answer":"1"})"));
  });
  const ArcTask task = testing::IdentityTask1x1();
  try {
    RemotePredict(SpecFor(endpoint.url()), task, task.test[0].input);
    FAIL();
  } catch (const RemoteError& e) {
    EXPECT_EQ(e.kind(), RemoteFailureKind::kHttpStatus);
  }
  EXPECT_EQ(endpoint.requests(), 1);
}

TEST(RemotePredictTest, UnreachableEndpointRetriesThenFails) {
  const ArcTask task = testing::IdentityTask1x1();
  for (int retries : {0, 2}) {
    try {
      RemotePredict(SpecFor(MockEndpoint::UnreachableUrl(), retries), task,
                    task.test[0].input);
      FAIL();
    } catch (const RemoteError& e) {
      EXPECT_EQ(e.kind(), RemoteFailureKind::kTransport);
      EXPECT_EQ(e.attempts(), 1 + retries);
    }
  }
}

TEST(RemoteReasonerTest, RejectsBadSpecs) {
  EXPECT_THROW(RemoteReasoner(SpecFor("ftp://x")), std::invalid_argument);
  RemoteReasonerSpec spec = SpecFor("http://127.0.0.1:1/");
  spec.timeout = std::chrono::milliseconds(0);
  EXPECT_THROW(RemoteReasoner{spec}, std::invalid_argument);
}

}  // namespace
}  // namespace islandes
