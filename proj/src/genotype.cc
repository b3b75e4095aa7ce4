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

#include "islandes/genotype.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <utility>

namespace islandes {

LayerPartition LayerPartition::FromLengths(
    const std::vector<std::pair<std::string, std::size_t>>& lengths) {
  std::vector<Layer> layers;
  layers.reserve(lengths.size());
  std::size_t offset = 0;
  for (const auto& [name, length] : lengths) {
    layers.push_back(Layer{name, offset, length});
    offset += length;
  }
  return LayerPartition(std::move(layers));
}

LayerPartition::LayerPartition(std::vector<Layer> layers)
    : layers_(std::move(layers)) {
  if (layers_.empty()) {
    throw std::invalid_argument("layer partition has no layers");
  }
  std::set<std::string> names;
  std::size_t expected_start = 0;
  for (const Layer& layer : layers_) {
    if (layer.length == 0) {
      throw std::invalid_argument("layer '" + layer.name + "' is empty");
    }
    if (!names.insert(layer.name).second) {
      throw std::invalid_argument("duplicate layer name '" + layer.name + "'");
    }
    if (layer.start != expected_start) {
      throw std::invalid_argument("layer '" + layer.name +
                                  "' is not contiguous with its predecessor");
    }
    expected_start += layer.length;
  }
  total_size_ = expected_start;
}

Genotype::Genotype(std::shared_ptr<const LayerPartition> partition,
                   std::vector<double> values)
    : partition_(std::move(partition)), values_(std::move(values)) {
  if (!partition_) throw std::invalid_argument("genotype without partition");
  if (values_.size() != partition_->total_size()) {
    throw std::invalid_argument(
        "genotype has " + std::to_string(values_.size()) +
        " values but its partition covers " +
        std::to_string(partition_->total_size()));
  }
  for (double v : values_) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("genotype contains a non-finite value");
    }
  }
}

Genotype Genotype::Zeros(std::shared_ptr<const LayerPartition> partition) {
  const std::size_t n = partition ? partition->total_size() : 0;
  return Genotype(std::move(partition), std::vector<double>(n, 0.0));
}

bool Genotype::SamePartition(const Genotype& other) const {
  return partition_ == other.partition_ || *partition_ == *other.partition_;
}

bool Genotype::operator==(const Genotype& other) const {
  if (!SamePartition(other)) return false;
  // Bitwise, so that -0.0 and 0.0 differ and the comparison is exact.
  return std::equal(values_.begin(), values_.end(), other.values_.begin(),
                    other.values_.end(), [](double a, double b) {
                      return std::bit_cast<std::uint64_t>(a) ==
                             std::bit_cast<std::uint64_t>(b);
                    });
}

std::vector<double> DeriveVariance(const Genotype& base, double epsilon,
                                   double sigma_floor) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw std::invalid_argument("epsilon must lie in [0, 1]");
  }
  if (!(sigma_floor >= 0.0) || !std::isfinite(sigma_floor)) {
    throw std::invalid_argument("sigma_floor must be a finite value >= 0");
  }
  std::vector<double> variance(base.size());
  const auto values = base.values();
  for (const Layer& layer : base.partition().layers()) {
    double magnitude = 0.0;
    for (std::size_t k = layer.start; k < layer.start + layer.length; ++k) {
      magnitude += std::abs(values[k]);
    }
    magnitude /= static_cast<double>(layer.length);
    const double entry = std::max(sigma_floor, epsilon * magnitude);
    std::fill_n(variance.begin() + static_cast<std::ptrdiff_t>(layer.start),
                layer.length, entry);
  }
  return variance;
}

SamplingDistribution::SamplingDistribution(Genotype mean, double epsilon,
                                           double sigma_floor)
    : SamplingDistribution(mean, DeriveVariance(mean, epsilon, sigma_floor),
                           epsilon, sigma_floor) {}

SamplingDistribution::SamplingDistribution(Genotype mean,
                                           std::vector<double> variance,
                                           double epsilon, double sigma_floor)
    : mean_(std::move(mean)),
      variance_(std::move(variance)),
      epsilon_(epsilon),
      sigma_floor_(sigma_floor) {
  if (variance_.size() != mean_.size()) {
    throw std::invalid_argument("variance length does not match the mean");
  }
  for (const Layer& layer : mean_.partition().layers()) {
    const double first = variance_[layer.start];
    if (!(first >= 0.0) || !std::isfinite(first)) {
      throw std::invalid_argument("variance entries must be finite and >= 0");
    }
    for (std::size_t k = layer.start; k < layer.start + layer.length; ++k) {
      if (variance_[k] != first) {
        throw std::invalid_argument("variance is not constant within layer '" +
                                    layer.name + "'");
      }
    }
  }
  stddev_.resize(variance_.size());
  std::transform(variance_.begin(), variance_.end(), stddev_.begin(),
                 [](double v) { return std::sqrt(v); });
}

void SamplingDistribution::set_mean(Genotype mean) {
  if (!mean.SamePartition(mean_)) {
    throw std::invalid_argument("new mean has a different partition");
  }
  mean_ = std::move(mean);
}

Genotype SamplingDistribution::Sample(NormalStream stream) const {
  Genotype out = mean_;
  SampleInto(std::move(stream), out);
  return out;
}

void SamplingDistribution::SampleInto(NormalStream stream,
                                      Genotype& out) const {
  if (!out.SamePartition(mean_)) {
    throw std::invalid_argument("sample target has a different partition");
  }
  const auto mean = mean_.values();
  // One normal per parameter is always consumed, so a parameter's draw does
  // not depend on whether earlier entries have zero variance.
  for (std::size_t k = 0; k < mean.size(); ++k) {
    const double z = stream.Next();
    out.values_[k] = stddev_[k] == 0.0 ? mean[k] : mean[k] + stddev_[k] * z;
  }
}

namespace {

template <typename Get>
Genotype AverageImpl(std::size_t count, Get get) {
  if (count == 0) throw std::invalid_argument("cannot average zero genotypes");
  const Genotype& first = get(0);
  for (std::size_t j = 1; j < count; ++j) {
    if (!get(j).SamePartition(first)) {
      throw std::invalid_argument("cannot average genotypes of different "
                                  "partitions");
    }
  }
  // Deviations from the first genotype are summed in list order, so identical
  // inputs average to themselves bitwise.
  const auto origin = first.values();
  std::vector<double> sum(first.size(), 0.0);
  for (std::size_t j = 1; j < count; ++j) {
    const auto values = get(j).values();
    for (std::size_t k = 0; k < sum.size(); ++k) {
      sum[k] += values[k] - origin[k];
    }
  }
  const double n = static_cast<double>(count);
  for (std::size_t k = 0; k < sum.size(); ++k) {
    sum[k] = sum[k] == 0.0 ? origin[k] : origin[k] + sum[k] / n;
  }
  return Genotype(first.shared_partition(), std::move(sum));
}

}  // namespace

Genotype Average(std::span<const Genotype> genotypes) {
  return AverageImpl(genotypes.size(), [&](std::size_t j) -> const Genotype& {
    return genotypes[j];
  });
}

Genotype Average(std::span<const Genotype* const> genotypes) {
  return AverageImpl(genotypes.size(), [&](std::size_t j) -> const Genotype& {
    return *genotypes[j];
  });
}

}  // namespace islandes
