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

#ifndef ISLANDES_REASONER_H_
#define ISLANDES_REASONER_H_

#include <cstddef>
#include <memory>
#include <span>
#include <string>

#include "islandes/arc_task.h"
#include "islandes/genotype.h"

namespace islandes {

// The phenotype: turns a test input of a task into an answer string.
class Reasoner {
 public:
  virtual ~Reasoner() = default;

  // Throws ReasonerError when no answer can be produced.
  virtual std::string Predict(const Genotype& genotype, const ArcTask& task,
                              const Grid& test_input) const = 0;

  // Whether Predict() may be called from several threads at once. The engine
  // serializes calls to reasoners that return false.
  virtual bool concurrency_safe() const = 0;
};

// Shapes of the built-in per-cell affine classifier.
//
// Parameters are two layers: "weights", a row-major
// (out_cells * 10) x (in_cells * 10) matrix, followed by "bias" of length
// out_cells * 10. Input cells are one-hot encoded over the ten colors.
struct ToyReasonerSpec {
  std::size_t in_height = 0;
  std::size_t in_width = 0;
  std::size_t out_height = 0;
  std::size_t out_width = 0;
  std::shared_ptr<const LayerPartition> param_layout;

  std::size_t in_features() const { return in_height * in_width * kNumColors; }
  std::size_t out_logits() const { return out_height * out_width * kNumColors; }
  std::size_t weight_count() const { return in_features() * out_logits(); }
  std::size_t parameter_count() const { return weight_count() + out_logits(); }

  // Index of the weight from input (cell, color) to output (cell, color).
  std::size_t WeightIndex(std::size_t out_cell, int out_color,
                          std::size_t in_cell, int in_color) const {
    return (out_cell * kNumColors + static_cast<std::size_t>(out_color)) *
               in_features() +
           in_cell * kNumColors + static_cast<std::size_t>(in_color);
  }
  std::size_t BiasIndex(std::size_t out_cell, int out_color) const {
    return weight_count() + out_cell * kNumColors +
           static_cast<std::size_t>(out_color);
  }
};

ToyReasonerSpec MakeToySpec(std::size_t in_height, std::size_t in_width,
                            std::size_t out_height, std::size_t out_width);

// Requires every input of the task(s) to share one shape and every output to
// share one shape. Throws std::invalid_argument otherwise.
ToyReasonerSpec InferToySpec(const ArcTask& task);
ToyReasonerSpec InferToySpec(std::span<const ArcTask> tasks);

// Affine map over the one-hot input, then argmax per output cell with ties
// going to the lowest color. Throws std::invalid_argument on a shape or
// parameter-count mismatch.
Grid ToyForward(const ToyReasonerSpec& spec, const Genotype& genotype,
                const Grid& input);

class ToyReasoner : public Reasoner {
 public:
  explicit ToyReasoner(ToyReasonerSpec spec) : spec_(std::move(spec)) {}

  std::string Predict(const Genotype& genotype, const ArcTask& task,
                      const Grid& test_input) const override;
  bool concurrency_safe() const override { return true; }

  const ToyReasonerSpec& spec() const { return spec_; }

 private:
  ToyReasonerSpec spec_;
};

}  // namespace islandes

#endif  // ISLANDES_REASONER_H_
