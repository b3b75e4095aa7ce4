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

#ifndef ISLANDES_CLI_H_
#define ISLANDES_CLI_H_

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

namespace islandes::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

struct RunArgs {
  std::filesystem::path config;
  std::optional<std::filesystem::path> out_dir;  // overrides out_dir
  std::optional<std::size_t> workers;            // overrides workers
};

struct ResumeArgs {
  std::filesystem::path checkpoint;
  std::optional<std::size_t> workers;
};

struct ScoreArgs {
  std::filesystem::path task;
  std::optional<std::filesystem::path> genotype;
  std::optional<std::string> remote;
  double timeout_s = 30.0;
  int retries = 2;
};

struct ReportArgs {
  std::filesystem::path log;
  std::filesystem::path out;
};

// Each command writes data to files (score prints to `out`) and progress or
// errors to `err`, and returns a process exit code.
int Run(const RunArgs& args, std::ostream& out, std::ostream& err);
int Resume(const ResumeArgs& args, std::ostream& out, std::ostream& err);
int Score(const ScoreArgs& args, std::ostream& out, std::ostream& err);
int Report(const ReportArgs& args, std::ostream& out, std::ostream& err);

// Parses argv and dispatches to a command.
int Main(int argc, const char* const* argv, std::ostream& out,
         std::ostream& err);

}  // namespace islandes::cli

#endif  // ISLANDES_CLI_H_
