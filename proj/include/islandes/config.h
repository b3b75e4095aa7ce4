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

#ifndef ISLANDES_CONFIG_H_
#define ISLANDES_CONFIG_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "islandes/evolution.h"

namespace islandes {

// Settings of one `run`, read from a flat `key = value` document. Lines
// starting with '#' are comments. Recognized keys:
//
//   seed, lambda, mu, islands, generations, epsilon, sigma_floor,
//   elite_mode (persistent | per_generation), reasoner (toy | remote),
//   task or task_set, checkpoint_every, out_dir, base_genotype, workers,
//   remote_endpoint, remote_timeout_s, remote_retries
//
// Relative paths are resolved against the config file's directory.
struct RunConfig {
  EvolutionConfig evolution;
  std::string reasoner = "toy";
  std::optional<std::filesystem::path> task;
  std::optional<std::filesystem::path> task_set;
  std::optional<std::filesystem::path> base_genotype;  // zeros when absent
  std::optional<std::filesystem::path> out_dir;
  std::size_t checkpoint_every = 0;  // 0: only the final checkpoint
  std::size_t workers = 1;           // concurrent evaluators per island
  std::string remote_endpoint;
  double remote_timeout_s = 30.0;
  int remote_retries = 2;
};

// Throws ConfigError naming the offending key.
RunConfig ParseRunConfig(std::string_view text,
                         const std::filesystem::path& base_dir);
RunConfig LoadRunConfig(const std::filesystem::path& path);

// Checks cross-key constraints of an evolution run, including that the
// reasoner is evolvable. Throws ConfigError.
void ValidateForEvolution(const RunConfig& config);

// Canonical `key = value` text with every key spelled out, paths absolute and
// reals printed to round-trip precision. Parsing it yields the same config.
std::string CanonicalConfigText(const RunConfig& config);

}  // namespace islandes

#endif  // ISLANDES_CONFIG_H_
