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

#include "islandes/checkpoint.h"

#include <openssl/evp.h>

#include <bit>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include "islandes/config.h"
#include "islandes/error.h"
#include "json.hpp"

namespace islandes {

using nlohmann::json;
namespace fs = std::filesystem;

std::string Sha256Hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(),
                 nullptr) != 1) {
    throw std::runtime_error("SHA-256 computation failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  hex.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) {
    hex.push_back(kHex[digest[i] >> 4]);
    hex.push_back(kHex[digest[i] & 0xf]);
  }
  return hex;
}

std::string EncodeF64Array(std::span<const double> values) {
  std::string bytes(values.size() * 8, '\0');
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto bits = std::bit_cast<std::uint64_t>(values[i]);
    for (int b = 0; b < 8; ++b) {
      bytes[i * 8 + b] = static_cast<char>((bits >> (8 * b)) & 0xff);
    }
  }
  return bytes;
}

std::vector<double> DecodeF64Array(std::string_view bytes) {
  if (bytes.size() % 8 != 0) {
    throw IntegrityError("array byte count " + std::to_string(bytes.size()) +
                         " is not a multiple of 8");
  }
  std::vector<double> values(bytes.size() / 8);
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::uint64_t bits = 0;
    for (int b = 0; b < 8; ++b) {
      bits |= static_cast<std::uint64_t>(
                  static_cast<unsigned char>(bytes[i * 8 + b]))
              << (8 * b);
    }
    values[i] = std::bit_cast<double>(bits);
  }
  return values;
}

namespace {

std::string ReadBytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IntegrityError("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteBytes(const fs::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("short write to " + path.string());
}

std::string UtcTimestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json OriginJson(const Origin& o) {
  return json{{"generation", o.generation},
              {"island", o.island},
              {"index", o.index}};
}

Origin OriginFromJson(const json& j) {
  return Origin{j.at("generation").get<std::uint64_t>(),
                j.at("island").get<std::uint64_t>(),
                j.at("index").get<std::uint64_t>()};
}

// Writes a sidecar and returns its manifest entry.
json WriteSidecar(const fs::path& dir, const std::string& name,
                  std::span<const double> values) {
  const std::string bytes = EncodeF64Array(values);
  WriteBytes(dir / name, bytes);
  return json{{"file", name},
              {"length", values.size()},
              {"sha256", Sha256Hex(bytes)}};
}

std::vector<double> ReadSidecar(const fs::path& dir, const json& entry) {
  const auto name = entry.at("file").get<std::string>();
  const std::string bytes = ReadBytes(dir / name);
  const auto length = entry.at("length").get<std::size_t>();
  if (bytes.size() != length * 8) {
    throw IntegrityError(name + ": expected " + std::to_string(length * 8) +
                         " bytes, found " + std::to_string(bytes.size()));
  }
  if (Sha256Hex(bytes) != entry.at("sha256").get<std::string>()) {
    throw IntegrityError(name + ": content hash mismatch");
  }
  return DecodeF64Array(bytes);
}

}  // namespace

void WriteF64File(const fs::path& path, std::span<const double> values) {
  WriteBytes(path, EncodeF64Array(values));
}

std::vector<double> ReadF64File(const fs::path& path) {
  return DecodeF64Array(ReadBytes(path));
}

Genotype ReadGenotypeFile(const fs::path& path,
                          std::shared_ptr<const LayerPartition> partition) {
  std::vector<double> values = ReadF64File(path);
  if (values.size() != partition->total_size()) {
    throw IntegrityError(path.string() + ": holds " +
                         std::to_string(values.size()) +
                         " parameters, expected " +
                         std::to_string(partition->total_size()));
  }
  try {
    return Genotype(std::move(partition), std::move(values));
  } catch (const std::invalid_argument& e) {
    throw IntegrityError(path.string() + ": " + e.what());
  }
}

RunManifest RunManifest::Create(std::string config_snapshot,
                                const fs::path& out_dir) {
  RunManifest m;
  m.config_hash = Sha256Hex(config_snapshot);
  m.config_snapshot = std::move(config_snapshot);
  m.created = UtcTimestamp();
  m.out_dir = fs::absolute(out_dir).lexically_normal();
  m.log_path = m.out_dir / "curve.csv";
  m.checkpoint_dir = m.out_dir / "checkpoints";
  return m;
}

std::string RunManifest::ToJson() const {
  return json{{"config_snapshot", config_snapshot},
              {"config_hash", config_hash},
              {"engine_version", engine_version},
              {"created", created},
              {"out_dir", out_dir.string()},
              {"log_path", log_path.string()},
              {"checkpoint_dir", checkpoint_dir.string()}}
      .dump(2);
}

RunManifest RunManifest::FromJson(std::string_view text) {
  try {
    const json j = json::parse(text);
    RunManifest m;
    m.config_snapshot = j.at("config_snapshot").get<std::string>();
    m.config_hash = j.at("config_hash").get<std::string>();
    m.engine_version = j.at("engine_version").get<std::string>();
    m.created = j.at("created").get<std::string>();
    m.out_dir = j.at("out_dir").get<std::string>();
    m.log_path = j.at("log_path").get<std::string>();
    m.checkpoint_dir = j.at("checkpoint_dir").get<std::string>();
    if (Sha256Hex(m.config_snapshot) != m.config_hash) {
      throw IntegrityError("config snapshot does not match its hash");
    }
    return m;
  } catch (const json::exception& e) {
    throw IntegrityError(std::string("malformed run manifest: ") + e.what());
  }
}

fs::path CheckpointDirFor(const fs::path& root, std::size_t generation) {
  char name[32];
  std::snprintf(name, sizeof(name), "gen-%06zu", generation);
  return root / name;
}

void WriteCheckpoint(const fs::path& dir, const RunManifest& manifest,
                     const EvolutionConfig& config, const RunState& state) {
  fs::create_directories(dir);
  const SamplingDistribution& dist = state.distribution;

  json arrays;
  arrays["mean"] = WriteSidecar(dir, "mean.f64", dist.mean().values());
  arrays["variance"] = WriteSidecar(dir, "variance.f64", dist.variance());

  json partition = json::array();
  for (const Layer& layer : dist.mean().partition().layers()) {
    partition.push_back(
        {{"name", layer.name}, {"start", layer.start}, {"length", layer.length}});
  }

  json islands = json::array();
  for (const IslandState& island : state.islands) {
    std::vector<double> packed;
    json entries = json::array();
    for (const EliteEntry& e : island.pool()) {
      packed.insert(packed.end(), e.genotype.values().begin(),
                    e.genotype.values().end());
      entries.push_back({{"score", e.score}, {"origin", OriginJson(e.origin)}});
    }
    const std::string name =
        "island-" + std::to_string(island.island_id()) + ".f64";
    islands.push_back({{"id", island.island_id()},
                       {"capacity", island.capacity()},
                       {"entries", std::move(entries)},
                       {"genotypes", WriteSidecar(dir, name, packed)}});
  }

  json best = nullptr;
  if (state.best_ever) {
    best = {{"score", state.best_ever->score},
            {"origin", OriginJson(state.best_ever->origin)},
            {"genotype", WriteSidecar(dir, "best.f64",
                                      state.best_ever->genotype.values())}};
  }

  json history = json::array();
  for (const GenerationRecord& r : state.history) {
    history.push_back({r.generation, r.best_gen, r.mean_gen, r.best_ever,
                       r.evaluations, r.failures});
  }

  const json doc{
      {"format", "islandes-checkpoint/1"},
      {"engine_version", kEngineVersion},
      {"run", json::parse(manifest.ToJson())},
      {"generation", state.completed_generations},
      // Offspring streams are keyed by (seed, generation, island, index), so
      // the next generation index is the only stream counter.
      {"streams",
       {{"scheme", "mt19937_64/seed_seq(seed,generation,island,index)"},
        {"seed", config.seed},
        {"next_generation", state.completed_generations + 1}}},
      {"partition", std::move(partition)},
      {"epsilon", dist.epsilon()},
      {"sigma_floor", dist.sigma_floor()},
      {"arrays", std::move(arrays)},
      {"islands", std::move(islands)},
      {"best_ever", std::move(best)},
      {"history", std::move(history)},
  };
  WriteBytes(dir / kCheckpointFile, doc.dump(2) + "\n");
}

Checkpoint ReadCheckpoint(const fs::path& path) {
  const fs::path file =
      fs::is_directory(path) ? path / kCheckpointFile : path;
  const fs::path dir = file.parent_path();
  json doc;
  try {
    doc = json::parse(ReadBytes(file));
  } catch (const json::parse_error& e) {
    throw IntegrityError(file.string() + ": malformed checkpoint: " + e.what());
  }

  try {
    const auto version = doc.at("engine_version").get<std::string>();
    if (version != kEngineVersion) {
      throw IntegrityError("checkpoint written by " + version +
                           ", this engine is " + kEngineVersion);
    }
    RunManifest manifest = RunManifest::FromJson(doc.at("run").dump());
    RunConfig run_config = ParseRunConfig(manifest.config_snapshot, {});
    const EvolutionConfig& config = run_config.evolution;
    if (doc.at("streams").at("seed").get<std::uint64_t>() != config.seed) {
      throw IntegrityError("checkpoint seed disagrees with its config");
    }

    std::vector<Layer> layers;
    for (const json& l : doc.at("partition")) {
      layers.push_back(Layer{l.at("name").get<std::string>(),
                             l.at("start").get<std::size_t>(),
                             l.at("length").get<std::size_t>()});
    }
    auto partition = std::make_shared<const LayerPartition>(std::move(layers));
    const std::size_t dim = partition->total_size();

    const json& arrays = doc.at("arrays");
    Genotype mean(partition, ReadSidecar(dir, arrays.at("mean")));
    std::vector<double> variance = ReadSidecar(dir, arrays.at("variance"));
    RunState state{
        .completed_generations = doc.at("generation").get<std::size_t>(),
        .distribution = SamplingDistribution(
            std::move(mean), std::move(variance),
            doc.at("epsilon").get<double>(),
            doc.at("sigma_floor").get<double>()),
        .islands = {},
        .history = {},
        .best_ever = std::nullopt,
    };

    for (const json& island : doc.at("islands")) {
      IslandState pool(island.at("id").get<std::size_t>(),
                       island.at("capacity").get<std::size_t>());
      const std::vector<double> packed =
          ReadSidecar(dir, island.at("genotypes"));
      const json& entries = island.at("entries");
      if (packed.size() != entries.size() * dim) {
        throw IntegrityError("island pool array does not match its entries");
      }
      for (std::size_t s = 0; s < entries.size(); ++s) {
        std::vector<double> values(packed.begin() + s * dim,
                                   packed.begin() + (s + 1) * dim);
        pool.Insert(EliteEntry{Genotype(partition, std::move(values)),
                               entries[s].at("score").get<double>(),
                               OriginFromJson(entries[s].at("origin"))});
      }
      state.islands.push_back(std::move(pool));
    }

    if (const json& best = doc.at("best_ever"); !best.is_null()) {
      state.best_ever = EliteEntry{
          Genotype(partition, ReadSidecar(dir, best.at("genotype"))),
          best.at("score").get<double>(), OriginFromJson(best.at("origin"))};
    }
    for (const json& row : doc.at("history")) {
      state.history.push_back(GenerationRecord{
          row.at(0).get<std::size_t>(), row.at(1).get<double>(),
          row.at(2).get<double>(), row.at(3).get<double>(),
          row.at(4).get<std::size_t>(), row.at(5).get<std::size_t>()});
    }
    if (state.history.size() != state.completed_generations ||
        state.islands.size() != config.islands) {
      throw IntegrityError("checkpoint state is inconsistent with its config");
    }
    return Checkpoint{std::move(manifest), config, std::move(state)};
  } catch (const json::exception& e) {
    throw IntegrityError(file.string() + ": malformed checkpoint: " + e.what());
  } catch (const std::invalid_argument& e) {
    throw IntegrityError(file.string() + ": " + e.what());
  } catch (const ConfigError& e) {
    throw IntegrityError(file.string() + ": config snapshot: " + e.what());
  }
}

}  // namespace islandes
