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

#include "islandes/config.h"

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "islandes/error.h"

namespace islandes {

namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T ParseNumber(std::string_view key, std::string_view value) {
  T out{};
  const auto [end, ec] =
      std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || end != value.data() + value.size()) {
    throw ConfigError(std::string(key) + ": invalid number '" +
                      std::string(value) + "'");
  }
  return out;
}

std::filesystem::path ResolvePath(std::string_view value,
                                  const std::filesystem::path& base_dir) {
  std::filesystem::path p{std::string(value)};
  if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
  return p.lexically_normal();
}

std::string FormatReal(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

RunConfig ParseRunConfig(std::string_view text,
                         const std::filesystem::path& base_dir) {
  RunConfig config;
  EvolutionConfig& evo = config.evolution;
  using Setter = std::function<void(std::string_view, std::string_view)>;
  const std::map<std::string, Setter, std::less<>> setters = {
      {"seed", [&](auto k, auto v) { evo.seed = ParseNumber<std::uint64_t>(k, v); }},
      {"lambda", [&](auto k, auto v) { evo.lambda = ParseNumber<std::size_t>(k, v); }},
      {"mu", [&](auto k, auto v) { evo.mu = ParseNumber<std::size_t>(k, v); }},
      {"islands", [&](auto k, auto v) { evo.islands = ParseNumber<std::size_t>(k, v); }},
      {"generations", [&](auto k, auto v) { evo.generations = ParseNumber<std::size_t>(k, v); }},
      {"epsilon", [&](auto k, auto v) { evo.epsilon = ParseNumber<double>(k, v); }},
      {"sigma_floor", [&](auto k, auto v) { evo.sigma_floor = ParseNumber<double>(k, v); }},
      {"elite_mode",
       [&](auto k, auto v) {
         if (v == "persistent") {
           evo.elite_mode = EliteMode::kPersistent;
         } else if (v == "per_generation") {
           evo.elite_mode = EliteMode::kPerGeneration;
         } else {
           throw ConfigError(std::string(k) + ": expected persistent or "
                                              "per_generation, got '" +
                             std::string(v) + "'");
         }
       }},
      {"reasoner",
       [&](auto k, auto v) {
         if (v != "toy" && v != "remote") {
           throw ConfigError(std::string(k) + ": expected toy or remote, got '" +
                             std::string(v) + "'");
         }
         config.reasoner = std::string(v);
       }},
      {"task", [&](auto, auto v) { config.task = ResolvePath(v, base_dir); }},
      {"task_set", [&](auto, auto v) { config.task_set = ResolvePath(v, base_dir); }},
      {"base_genotype", [&](auto, auto v) { config.base_genotype = ResolvePath(v, base_dir); }},
      {"out_dir", [&](auto, auto v) { config.out_dir = ResolvePath(v, base_dir); }},
      {"checkpoint_every", [&](auto k, auto v) { config.checkpoint_every = ParseNumber<std::size_t>(k, v); }},
      {"workers", [&](auto k, auto v) { config.workers = ParseNumber<std::size_t>(k, v); }},
      {"remote_endpoint", [&](auto, auto v) { config.remote_endpoint = std::string(v); }},
      {"remote_timeout_s", [&](auto k, auto v) { config.remote_timeout_s = ParseNumber<double>(k, v); }},
      {"remote_retries", [&](auto k, auto v) { config.remote_retries = ParseNumber<int>(k, v); }},
  };

  std::set<std::string, std::less<>> seen;
  std::istringstream lines{std::string(text)};
  std::string raw;
  int line_number = 0;
  while (std::getline(lines, raw)) {
    ++line_number;
    const std::string_view line = Trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_number) +
                        ": expected 'key = value'");
    }
    const std::string_view key = Trim(line.substr(0, eq));
    const std::string_view value = Trim(line.substr(eq + 1));
    const auto setter = setters.find(key);
    if (setter == setters.end()) {
      throw ConfigError(std::string(key) + ": unknown key");
    }
    if (!seen.emplace(key).second) {
      throw ConfigError(std::string(key) + ": given more than once");
    }
    if (value.empty()) throw ConfigError(std::string(key) + ": empty value");
    setter->second(key, value);
  }

  for (const char* required : {"lambda", "mu", "generations"}) {
    if (!seen.contains(required)) {
      throw ConfigError(std::string(required) + ": missing required key");
    }
  }
  if (config.task.has_value() == config.task_set.has_value()) {
    throw ConfigError("task: exactly one of task or task_set must be given");
  }
  if (config.workers == 0) throw ConfigError("workers: must be at least 1");
  if (!(config.remote_timeout_s > 0.0)) {
    throw ConfigError("remote_timeout_s: must be positive");
  }
  if (config.remote_retries < 0) {
    throw ConfigError("remote_retries: must be >= 0");
  }
  evo.Validate();
  return config;
}

RunConfig LoadRunConfig(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return ParseRunConfig(text.str(),
                        std::filesystem::absolute(path).parent_path());
}

void ValidateForEvolution(const RunConfig& config) {
  config.evolution.Validate();
  if (config.reasoner != "toy") {
    throw ConfigError(
        "reasoner: remote reasoners expose no parameters and cannot be "
        "evolved; use reasoner = toy");
  }
}

std::string CanonicalConfigText(const RunConfig& config) {
  const EvolutionConfig& evo = config.evolution;
  std::ostringstream out;
  auto put = [&](std::string_view key, const std::string& value) {
    out << key << " = " << value << '\n';
  };
  auto path = [](const std::filesystem::path& p) {
    return std::filesystem::absolute(p).lexically_normal().string();
  };
  put("seed", std::to_string(evo.seed));
  put("lambda", std::to_string(evo.lambda));
  put("mu", std::to_string(evo.mu));
  put("islands", std::to_string(evo.islands));
  put("generations", std::to_string(evo.generations));
  put("epsilon", FormatReal(evo.epsilon));
  put("sigma_floor", FormatReal(evo.sigma_floor));
  put("elite_mode", evo.elite_mode == EliteMode::kPersistent
                        ? "persistent"
                        : "per_generation");
  put("reasoner", config.reasoner);
  if (config.task) put("task", path(*config.task));
  if (config.task_set) put("task_set", path(*config.task_set));
  if (config.base_genotype) put("base_genotype", path(*config.base_genotype));
  if (config.out_dir) put("out_dir", path(*config.out_dir));
  put("checkpoint_every", std::to_string(config.checkpoint_every));
  put("workers", std::to_string(config.workers));
  if (!config.remote_endpoint.empty()) {
    put("remote_endpoint", config.remote_endpoint);
  }
  put("remote_timeout_s", FormatReal(config.remote_timeout_s));
  put("remote_retries", std::to_string(config.remote_retries));
  return out.str();
}

}  // namespace islandes
