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

#ifndef ISLANDES_GENOTYPE_H_
#define ISLANDES_GENOTYPE_H_

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "islandes/random.h"

namespace islandes {

struct Layer {
  std::string name;
  std::size_t start = 0;
  std::size_t length = 0;

  bool operator==(const Layer&) const = default;
};

// Contiguous, non-overlapping named segments covering [0, total_size()).
class LayerPartition {
 public:
  // Builds the partition from (name, length) pairs laid out back to back.
  // Throws std::invalid_argument on empty input, zero lengths or duplicate
  // names.
  static LayerPartition FromLengths(
      const std::vector<std::pair<std::string, std::size_t>>& lengths);

  // Validates explicit segments. Throws std::invalid_argument when they
  // leave gaps, overlap, or are not in ascending order.
  explicit LayerPartition(std::vector<Layer> layers);

  const std::vector<Layer>& layers() const { return layers_; }
  std::size_t total_size() const { return total_size_; }

  bool operator==(const LayerPartition&) const = default;

 private:
  std::vector<Layer> layers_;
  std::size_t total_size_ = 0;
};

// A flat parameter vector with its layer structure. Partitions are shared
// between genotypes of one run and never mutated.
class Genotype {
 public:
  // Throws std::invalid_argument on a length mismatch or non-finite value.
  Genotype(std::shared_ptr<const LayerPartition> partition,
           std::vector<double> values);

  static Genotype Zeros(std::shared_ptr<const LayerPartition> partition);

  std::span<const double> values() const { return values_; }
  const LayerPartition& partition() const { return *partition_; }
  const std::shared_ptr<const LayerPartition>& shared_partition() const {
    return partition_;
  }
  std::size_t size() const { return values_.size(); }

  bool SamePartition(const Genotype& other) const;

  // Bitwise value equality plus partition equality.
  bool operator==(const Genotype& other) const;

 private:
  friend class SamplingDistribution;

  std::shared_ptr<const LayerPartition> partition_;
  std::vector<double> values_;
};

// Per-parameter variance of the layer-scaled exploration rule:
//   variance[k] = max(sigma_floor, epsilon * mean(|base[layer(k)]|)).
// Absolute values keep the variance non-negative on layers with signed
// weights; the floor keeps all-zero layers from freezing.
std::vector<double> DeriveVariance(const Genotype& base, double epsilon,
                                   double sigma_floor);

// Diagonal Gaussian N(mean, diag(variance)).
class SamplingDistribution {
 public:
  // Derives the variance from `mean` itself.
  SamplingDistribution(Genotype mean, double epsilon, double sigma_floor);
  // Uses an already derived variance (fixed across generations). Throws
  // std::invalid_argument on a length mismatch, a negative entry or a
  // variance that is not constant within a layer.
  SamplingDistribution(Genotype mean, std::vector<double> variance,
                       double epsilon, double sigma_floor);

  const Genotype& mean() const { return mean_; }
  std::span<const double> variance() const { return variance_; }
  double epsilon() const { return epsilon_; }
  double sigma_floor() const { return sigma_floor_; }

  // Moves the mean while keeping the variance fixed.
  void set_mean(Genotype mean);

  Genotype Sample(NormalStream stream) const;
  // Same draw as Sample(), written into an existing genotype of the same
  // partition so hot loops can reuse the allocation.
  void SampleInto(NormalStream stream, Genotype& out) const;

 private:
  Genotype mean_;
  std::vector<double> variance_;
  std::vector<double> stddev_;
  double epsilon_ = 0.0;
  double sigma_floor_ = 0.0;
};

// Elementwise arithmetic mean, summed in list order for each parameter.
// Throws std::invalid_argument on an empty list or mixed partitions.
Genotype Average(std::span<const Genotype> genotypes);
Genotype Average(std::span<const Genotype* const> genotypes);

}  // namespace islandes

#endif  // ISLANDES_GENOTYPE_H_
