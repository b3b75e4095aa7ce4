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

#include <array>
#include <stdexcept>
#include <string>

#include "islandes/reasoner.h"

namespace islandes {

ToyReasonerSpec MakeToySpec(std::size_t in_height, std::size_t in_width,
                            std::size_t out_height, std::size_t out_width) {
  if (in_height == 0 || in_width == 0 || out_height == 0 || out_width == 0) {
    throw std::invalid_argument("toy reasoner dimensions must be positive");
  }
  ToyReasonerSpec spec;
  spec.in_height = in_height;
  spec.in_width = in_width;
  spec.out_height = out_height;
  spec.out_width = out_width;
  spec.param_layout = std::make_shared<const LayerPartition>(
      LayerPartition::FromLengths({{"weights", spec.weight_count()},
                                   {"bias", spec.out_logits()}}));
  return spec;
}

ToyReasonerSpec InferToySpec(const ArcTask& task) {
  return InferToySpec(std::span<const ArcTask>(&task, 1));
}

ToyReasonerSpec InferToySpec(std::span<const ArcTask> tasks) {
  if (tasks.empty()) throw std::invalid_argument("no tasks to infer shapes");
  const GridPair& first = tasks.front().train.front();
  auto check = [&](const GridPair& pair) {
    if (pair.input.height() != first.input.height() ||
        pair.input.width() != first.input.width() ||
        pair.output.height() != first.output.height() ||
        pair.output.width() != first.output.width()) {
      throw std::invalid_argument(
          "shape-varying task unsupported by toy reasoner");
    }
  };
  for (const ArcTask& task : tasks) {
    for (const GridPair& pair : task.train) check(pair);
    for (const GridPair& pair : task.test) check(pair);
  }
  return MakeToySpec(first.input.height(), first.input.width(),
                     first.output.height(), first.output.width());
}

Grid ToyForward(const ToyReasonerSpec& spec, const Genotype& genotype,
                const Grid& input) {
  if (input.height() != spec.in_height || input.width() != spec.in_width) {
    throw std::invalid_argument("input grid shape does not match the toy spec");
  }
  if (genotype.size() != spec.parameter_count()) {
    throw std::invalid_argument("genotype size does not match the toy spec");
  }
  const auto params = genotype.values();
  const std::size_t in_cells = spec.in_height * spec.in_width;
  const std::size_t out_cells = spec.out_height * spec.out_width;
  const auto& colors = input.cells();

  std::vector<std::uint8_t> out(out_cells);
  for (std::size_t o = 0; o < out_cells; ++o) {
    std::array<double, kNumColors> logits{};
    for (int v = 0; v < kNumColors; ++v) {
      // One-hot input: only the weight of each cell's active color counts.
      double logit = params[spec.BiasIndex(o, v)];
      for (std::size_t c = 0; c < in_cells; ++c) {
        logit += params[spec.WeightIndex(o, v, c, colors[c])];
      }
      logits[static_cast<std::size_t>(v)] = logit;
    }
    int best = 0;
    for (int v = 1; v < kNumColors; ++v) {
      if (logits[static_cast<std::size_t>(v)] >
          logits[static_cast<std::size_t>(best)]) {
        best = v;
      }
    }
    out[o] = static_cast<std::uint8_t>(best);
  }
  return Grid(spec.out_height, spec.out_width, std::move(out));
}

std::string ToyReasoner::Predict(const Genotype& genotype, const ArcTask&,
                                 const Grid& test_input) const {
  return SerializeGrid(ToyForward(spec_, genotype, test_input));
}

}  // namespace islandes
