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

// Run manifests and checkpoints.
//
// A checkpoint is a directory holding `checkpoint.json` plus one sidecar file
// per real array (mean, variance, best-ever genotype, one per island pool).
// Sidecars are raw little-endian IEEE-754 doubles. The JSON lists each
// sidecar's file name, element count and SHA-256, and carries everything
// else: the run manifest, the partition, pool scores and origins, and the
// convergence history.

#ifndef ISLANDES_CHECKPOINT_H_
#define ISLANDES_CHECKPOINT_H_

#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "islandes/evolution.h"
#include "islandes/genotype.h"

namespace islandes {

inline constexpr char kEngineVersion[] = "islandes-0.1.0";
inline constexpr char kCheckpointFile[] = "checkpoint.json";

std::string Sha256Hex(std::string_view bytes);

// Little-endian IEEE-754 encoding, independent of host byte order.
std::string EncodeF64Array(std::span<const double> values);
// Throws IntegrityError when the byte count is not a multiple of 8.
std::vector<double> DecodeF64Array(std::string_view bytes);

void WriteF64File(const std::filesystem::path& path,
                  std::span<const double> values);
std::vector<double> ReadF64File(const std::filesystem::path& path);

// Reads a genotype stored as a bare array. Throws IntegrityError when the
// length does not match the partition.
Genotype ReadGenotypeFile(const std::filesystem::path& path,
                          std::shared_ptr<const LayerPartition> partition);

struct RunManifest {
  std::string config_snapshot;  // canonical config text
  std::string config_hash;      // SHA-256 of config_snapshot
  std::string engine_version = kEngineVersion;
  std::string created;  // UTC, ISO-8601
  std::filesystem::path out_dir;
  std::filesystem::path log_path;
  std::filesystem::path checkpoint_dir;

  static RunManifest Create(std::string config_snapshot,
                            const std::filesystem::path& out_dir);
  std::string ToJson() const;
  static RunManifest FromJson(std::string_view text);
};

struct Checkpoint {
  RunManifest manifest;
  EvolutionConfig config;
  RunState state;
};

// Writes `<dir>/checkpoint.json` and its sidecars, creating `dir`.
void WriteCheckpoint(const std::filesystem::path& dir,
                     const RunManifest& manifest,
                     const EvolutionConfig& config, const RunState& state);

// Reads a checkpoint given its directory or its checkpoint.json. Throws
// IntegrityError on a version mismatch, malformed JSON, or a sidecar whose
// length or hash disagrees with the manifest.
Checkpoint ReadCheckpoint(const std::filesystem::path& path);

// Directory name used for the checkpoint after `generation`.
std::filesystem::path CheckpointDirFor(const std::filesystem::path& root,
                                       std::size_t generation);

}  // namespace islandes

#endif  // ISLANDES_CHECKPOINT_H_
