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

#include "islandes/reasoner.h"

#include <gtest/gtest.h>

#include <random>
#include <thread>

#include "islandes/scoring.h"
#include "support/test_support.h"

namespace islandes {
namespace {

using testing::ParseSerializedGrid;

// Weight 1 from input (cell c, color v) to output (cell c, color v).
Genotype IdentityWiring(const ToyReasonerSpec& spec) {
  std::vector<double> values(spec.parameter_count(), 0.0);
  const std::size_t cells = spec.in_height * spec.in_width;
  for (std::size_t c = 0; c < cells; ++c) {
    for (int v = 0; v < kNumColors; ++v) {
      values[spec.WeightIndex(c, v, c, v)] = 1.0;
    }
  }
  return Genotype(spec.param_layout, values);
}

TEST(InferToySpecTest, ParameterCounts) {
  const ToyReasonerSpec two = InferToySpec(testing::IdentityTask2x2());
  EXPECT_EQ(two.weight_count(), 40u * 40u);
  EXPECT_EQ(two.out_logits(), 40u);
  EXPECT_EQ(two.parameter_count(), 1640u);
  ASSERT_EQ(two.param_layout->layers().size(), 2u);
  EXPECT_EQ(two.param_layout->layers()[0].name, "weights");
  EXPECT_EQ(two.param_layout->layers()[1].name, "bias");
  EXPECT_EQ(two.param_layout->layers()[1].length, 40u);

  const ToyReasonerSpec one = InferToySpec(testing::IdentityTask1x1());
  EXPECT_EQ(one.weight_count(), 100u);
  EXPECT_EQ(one.out_logits(), 10u);
}

TEST(InferToySpecTest, RejectsShapeVaryingTask) {
  ArcTask task = testing::IdentityTask2x2();
  task.train.push_back(testing::Pair({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}},
                                     {{1, 2, 3}, {4, 5, 6}, {7, 8, 9}}));
  try {
    InferToySpec(task);
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("shape-varying"), std::string::npos);
  }
}

TEST(InferToySpecTest, DifferentInputAndOutputShapes) {
  ArcTask task;
  task.train = {testing::Pair({{1, 2}}, {{1}, {2}, {3}})};
  task.test = {testing::Pair({{3, 4}}, {{3}, {4}, {5}})};
  const ToyReasonerSpec spec = InferToySpec(task);
  EXPECT_EQ(spec.in_features(), 20u);
  EXPECT_EQ(spec.out_logits(), 30u);
  const Grid out =
      ToyForward(spec, Genotype::Zeros(spec.param_layout), task.test[0].input);
  EXPECT_EQ(out.height(), 3u);
  EXPECT_EQ(out.width(), 1u);
}

TEST(ToyForwardTest, ZeroGenotypePredictsColorZero) {
  const ToyReasonerSpec spec = MakeToySpec(2, 2, 2, 2);
  const Grid out = ToyForward(spec, Genotype::Zeros(spec.param_layout),
                              Grid::FromRows({{5, 6}, {7, 8}}));
  EXPECT_EQ(SerializeGrid(out), "00|00");
}

TEST(ToyForwardTest, SingleDominantLogit) {
  const ToyReasonerSpec spec = MakeToySpec(2, 2, 2, 2);
  std::vector<double> values(spec.parameter_count(), 0.0);
  values[spec.BiasIndex(0, 3)] = 1.0;
  const Grid out = ToyForward(spec, Genotype(spec.param_layout, values),
                              Grid::FromRows({{1, 1}, {1, 1}}));
  EXPECT_EQ(out.at(0, 0), 3);
  EXPECT_EQ(out.at(0, 1), 0);
}

TEST(ToyForwardTest, IdentityWiringReproducesInput) {
  const ToyReasonerSpec spec = MakeToySpec(2, 2, 2, 2);
  const Grid input = ParseSerializedGrid("12|30");
  const Grid out = ToyForward(spec, IdentityWiring(spec), input);
  EXPECT_EQ(SerializeGrid(out), "12|30");
}

TEST(ToyForwardTest, TiesGoToLowestColor) {
  const ToyReasonerSpec spec = MakeToySpec(1, 1, 1, 1);
  std::vector<double> values(spec.parameter_count(), 0.0);
  values[spec.BiasIndex(0, 4)] = 2.0;
  values[spec.BiasIndex(0, 7)] = 2.0;
  const Grid out = ToyForward(spec, Genotype(spec.param_layout, values),
                              Grid::FromRows({{0}}));
  EXPECT_EQ(out.at(0, 0), 4);
}

TEST(ToyForwardTest, DimensionMismatch) {
  const ToyReasonerSpec spec = MakeToySpec(2, 2, 2, 2);
  EXPECT_THROW(ToyForward(spec, Genotype::Zeros(spec.param_layout),
                          Grid::FromRows({{1, 2, 3}})),
               std::invalid_argument);
  const ToyReasonerSpec small = MakeToySpec(1, 1, 1, 1);
  EXPECT_THROW(ToyForward(spec, Genotype::Zeros(small.param_layout),
                          Grid::FromRows({{1, 2}, {3, 4}})),
               std::invalid_argument);
}

Genotype RandomGenotype(const ToyReasonerSpec& spec, std::mt19937_64& rng) {
  std::normal_distribution<double> value(0.0, 1.0);
  std::vector<double> values(spec.parameter_count());
  for (double& v : values) v = value(rng);
  return Genotype(spec.param_layout, values);
}

TEST(ToyForwardProperty, DeterministicAndValidAcrossThreads) {
  const ToyReasonerSpec spec = MakeToySpec(3, 2, 2, 3);
  std::mt19937_64 rng(9);
  const Genotype g = RandomGenotype(spec, rng);
  const Grid input = Grid::FromRows({{1, 2}, {3, 4}, {9, 0}});
  const Grid expected = ToyForward(spec, g, input);
  EXPECT_EQ(expected.height(), 2u);
  EXPECT_EQ(expected.width(), 3u);
  for (auto c : expected.cells()) EXPECT_LT(c, kNumColors);

  std::vector<std::thread> threads;
  std::atomic<int> mismatches{0};
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&] {
      for (int i = 0; i < 200; ++i) {
        if (!(ToyForward(spec, g, input) == expected)) ++mismatches;
      }
    });
  }
  for (auto& t : threads) t.join();
  EXPECT_EQ(mismatches.load(), 0);
}

TEST(ToyForwardProperty, WeightChangeOnlyAffectsItsOutputCell) {
  const ToyReasonerSpec spec = MakeToySpec(2, 2, 2, 2);
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> color(0, 9);
  std::uniform_int_distribution<std::size_t> cell(0, 3);
  std::normal_distribution<double> bump(0.0, 5.0);
  for (int trial = 0; trial < 300; ++trial) {
    const Genotype g = RandomGenotype(spec, rng);
    const Grid input = Grid::FromRows(
        {{color(rng), color(rng)}, {color(rng), color(rng)}});
    const std::size_t out_cell = cell(rng);
    std::vector<double> values(g.values().begin(), g.values().end());
    values[spec.WeightIndex(out_cell, color(rng), cell(rng), color(rng))] +=
        bump(rng);
    const Grid before = ToyForward(spec, g, input);
    const Grid after =
        ToyForward(spec, Genotype(spec.param_layout, values), input);
    for (std::size_t c = 0; c < 4; ++c) {
      if (c != out_cell) {
        EXPECT_EQ(before.cells()[c], after.cells()[c]);
      }
    }
  }
}

TEST(ToyReasonerTest, EvaluateIdentityTask) {
  const ArcTask task = testing::IdentityTask2x2();
  ToyReasoner reasoner(InferToySpec(task));
  EXPECT_EQ(Evaluate(reasoner, IdentityWiring(reasoner.spec()), task).score,
            1.0);
  // Zero genotype predicts "00|00" against "12|30": 3 substitutions of 5.
  EXPECT_DOUBLE_EQ(
      Evaluate(reasoner, Genotype::Zeros(reasoner.spec().param_layout), task)
          .score,
      1.0 - 3.0 / 5.0);
}

}  // namespace
}  // namespace islandes
