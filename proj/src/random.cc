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

#include "islandes/random.h"

#include <cmath>
#include <numbers>

namespace islandes {

namespace {

std::seed_seq MakeSeedSeq(const StreamKey& key) {
  auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v); };
  auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
  return std::seed_seq{lo(key.seed),       hi(key.seed),
                       lo(key.generation), hi(key.generation),
                       lo(key.island),     hi(key.island),
                       lo(key.index),      hi(key.index)};
}

// Uniform in (0, 1].
double OpenUniform(std::mt19937_64& engine) {
  return static_cast<double>((engine() >> 11) + 1) * 0x1.0p-53;
}

}  // namespace

NormalStream::NormalStream(const StreamKey& key) {
  std::seed_seq seq = MakeSeedSeq(key);
  engine_.seed(seq);
}

double NormalStream::Next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = OpenUniform(engine_);
  const double u2 = OpenUniform(engine_);
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

}  // namespace islandes
