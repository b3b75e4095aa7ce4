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

#include <gtest/gtest.h>

#include <bit>
#include <cmath>

#include "islandes/config.h"
#include "islandes/error.h"
#include "support/test_support.h"

namespace islandes {
namespace {

namespace fs = std::filesystem;
using testing::ReadText;
using testing::WriteText;

TEST(Sha256Test, KnownDigests) {
  EXPECT_EQ(Sha256Hex(""),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(Sha256Hex("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(F64ArrayTest, LittleEndianLayout) {
  const std::vector<double> one{1.0};
  EXPECT_EQ(EncodeF64Array(one), std::string("\0\0\0\0\0\0\xf0\x3f", 8));
  const std::vector<double> values{-0.0, 1e-310, 3.141592653589793, -7.5e300};
  const auto back = DecodeF64Array(EncodeF64Array(values));
  ASSERT_EQ(back.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    EXPECT_EQ(std::bit_cast<std::uint64_t>(back[i]),
              std::bit_cast<std::uint64_t>(values[i]));
  }
  EXPECT_THROW(DecodeF64Array("1234567"), IntegrityError);
}

TEST(ReadGenotypeFileTest, LengthMustMatchPartition) {
  testing::TempDir dir("genotype-file");
  const std::vector<double> values{1, 2, 3};
  WriteF64File(dir.path() / "g.f64", values);
  const auto p = testing::Partition({{"a", 2}, {"b", 1}});
  EXPECT_EQ(ReadGenotypeFile(dir.path() / "g.f64", p), Genotype(p, values));
  EXPECT_THROW(ReadGenotypeFile(dir.path() / "g.f64",
                                testing::Partition({{"a", 4}})),
               IntegrityError);
}

// A small run with its config snapshot.
struct Fixture {
  RunConfig config;
  RunManifest manifest;
  Genotype base;
};

Fixture MakeFixture(const fs::path& out_dir, std::size_t generations) {
  RunConfig config = ParseRunConfig(
      "seed = 5\nlambda = 12\nmu = 6\nislands = 3\ngenerations = " +
          std::to_string(generations) +
          "\nepsilon = 0.3\nsigma_floor = 0.02\ntask = /nonexistent.json\n",
      {});
  config.out_dir = out_dir;
  auto p = testing::Partition({{"w", 5}, {"b", 3}});
  Genotype base(p, {0.5, -1.0, 2.0, 0.0, 1.5, 0.1, -0.2, 0.3});
  return Fixture{config, RunManifest::Create(CanonicalConfigText(config), out_dir),
                 base};
}

double Fitness(const Genotype& g) {
  double d = 0.0;
  for (double v : g.values()) d += (v - 0.7) * (v - 0.7);
  return 1.0 / (1.0 + d);
}

std::map<std::string, std::string> DirectoryBytes(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    files[entry.path().filename().string()] = ReadText(entry.path());
  }
  return files;
}

TEST(CheckpointTest, WriteReadWriteIsByteIdentical) {
  testing::TempDir dir("checkpoint");
  const Fixture f = MakeFixture(dir.path(), 4);
  FunctionScorer scorer(Fitness);
  RunState state = StartRun(f.config.evolution, f.base);
  RunGeneration(f.config.evolution, scorer, state);
  RunGeneration(f.config.evolution, scorer, state);

  WriteCheckpoint(dir.path() / "a", f.manifest, f.config.evolution, state);
  const Checkpoint read = ReadCheckpoint(dir.path() / "a");
  WriteCheckpoint(dir.path() / "b", read.manifest, read.config, read.state);
  const auto a = DirectoryBytes(dir.path() / "a");
  EXPECT_EQ(a, DirectoryBytes(dir.path() / "b"));
  EXPECT_EQ(a.size(), 1u + 2u + 3u + 1u);

  EXPECT_EQ(read.manifest.config_snapshot, f.manifest.config_snapshot);
  EXPECT_EQ(read.config.seed, 5u);
  EXPECT_EQ(read.state.completed_generations, 2u);
  EXPECT_EQ(read.state.distribution.mean(), state.distribution.mean());
  EXPECT_TRUE(std::equal(read.state.distribution.variance().begin(),
                         read.state.distribution.variance().end(),
                         state.distribution.variance().begin()));
  for (std::size_t z = 0; z < 3; ++z) {
    const auto& want = state.islands[z].pool();
    const auto& got = read.state.islands[z].pool();
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t k = 0; k < want.size(); ++k) {
      EXPECT_EQ(got[k].genotype, want[k].genotype);
      EXPECT_EQ(got[k].score, want[k].score);
      EXPECT_EQ(got[k].origin, want[k].origin);
    }
  }
  EXPECT_EQ(read.state.best_ever->genotype, state.best_ever->genotype);
  EXPECT_EQ(read.state.history.size(), 2u);
  EXPECT_EQ(read.state.history[1].mean_gen, state.history[1].mean_gen);
}

TEST(CheckpointTest, ResumedRunMatchesUninterruptedRun) {
  testing::TempDir dir("checkpoint-resume");
  const Fixture f = MakeFixture(dir.path(), 6);
  FunctionScorer scorer(Fitness);
  const RunState whole = islandes::Run(f.config.evolution, scorer, f.base);

  RunState partial = StartRun(f.config.evolution, f.base);
  for (int g = 0; g < 3; ++g) RunGeneration(f.config.evolution, scorer, partial);
  WriteCheckpoint(dir.path() / "mid", f.manifest, f.config.evolution, partial);
  Checkpoint resumed = ReadCheckpoint(dir.path() / "mid" / kCheckpointFile);
  ContinueRun(resumed.config, scorer, resumed.state);

  ASSERT_EQ(resumed.state.history.size(), 6u);
  for (std::size_t g = 0; g < 6; ++g) {
    EXPECT_EQ(resumed.state.history[g].best_gen, whole.history[g].best_gen);
    EXPECT_EQ(resumed.state.history[g].mean_gen, whole.history[g].mean_gen);
    EXPECT_EQ(resumed.state.history[g].best_ever, whole.history[g].best_ever);
    EXPECT_EQ(resumed.state.history[g].evaluations,
              whole.history[g].evaluations);
  }
  EXPECT_EQ(resumed.state.distribution.mean(), whole.distribution.mean());
  EXPECT_EQ(resumed.state.best_ever->genotype, whole.best_ever->genotype);
}

class CheckpointIntegrityTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const Fixture f = MakeFixture(dir_.path(), 3);
    FunctionScorer scorer(Fitness);
    RunState state = StartRun(f.config.evolution, f.base);
    RunGeneration(f.config.evolution, scorer, state);
    WriteCheckpoint(ckpt(), f.manifest, f.config.evolution, state);
    ASSERT_NO_THROW(ReadCheckpoint(ckpt()));
  }
  fs::path ckpt() const { return dir_.path() / "ckpt"; }
  void Replace(const std::string& file, const std::string& from,
               const std::string& to) {
    std::string text = ReadText(ckpt() / file);
    const auto at = text.find(from);
    ASSERT_NE(at, std::string::npos) << from;
    text.replace(at, from.size(), to);
    WriteText(ckpt() / file, text);
  }

  testing::TempDir dir_{"checkpoint-integrity"};
};

TEST_F(CheckpointIntegrityTest, TruncatedManifest) {
  const std::string text = ReadText(ckpt() / kCheckpointFile);
  WriteText(ckpt() / kCheckpointFile, text.substr(0, text.size() / 2));
  EXPECT_THROW(ReadCheckpoint(ckpt()), IntegrityError);
}

TEST_F(CheckpointIntegrityTest, TruncatedArray) {
  const std::string bytes = ReadText(ckpt() / "mean.f64");
  WriteText(ckpt() / "mean.f64", bytes.substr(0, bytes.size() - 8));
  EXPECT_THROW(ReadCheckpoint(ckpt()), IntegrityError);
}

TEST_F(CheckpointIntegrityTest, AlteredArray) {
  std::string bytes = ReadText(ckpt() / "island-1.f64");
  bytes[3] = static_cast<char>(bytes[3] ^ 0x10);
  WriteText(ckpt() / "island-1.f64", bytes);
  EXPECT_THROW(ReadCheckpoint(ckpt()), IntegrityError);
}

TEST_F(CheckpointIntegrityTest, MissingArray) {
  fs::remove(ckpt() / "variance.f64");
  EXPECT_THROW(ReadCheckpoint(ckpt()), IntegrityError);
}

TEST_F(CheckpointIntegrityTest, EngineVersionMismatch) {
  Replace(kCheckpointFile, std::string("\"engine_version\": \"") + kEngineVersion,
          "\"engine_version\": \"islandes-9.9.9");
  try {
    ReadCheckpoint(ckpt());
    FAIL();
  } catch (const IntegrityError& e) {
    EXPECT_NE(std::string(e.what()).find("islandes-9.9.9"), std::string::npos);
  }
}

TEST_F(CheckpointIntegrityTest, TamperedConfigSnapshot) {
  Replace(kCheckpointFile, "seed = 5", "seed = 6");
  EXPECT_THROW(ReadCheckpoint(ckpt()), IntegrityError);
}

TEST(CheckpointDirForTest, ZeroPadded) {
  EXPECT_EQ(CheckpointDirFor("/r", 3), fs::path("/r/gen-000003"));
}

}  // namespace
}  // namespace islandes
