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

#ifndef ISLANDES_RANDOM_H_
#define ISLANDES_RANDOM_H_

#include <cstdint>
#include <random>

namespace islandes {

// Identifies the random stream of one offspring. Every offspring gets its own
// stream, so the draws do not depend on evaluation order or thread count.
struct StreamKey {
  std::uint64_t seed = 0;
  std::uint64_t generation = 0;
  std::uint64_t island = 0;
  std::uint64_t index = 0;
};

// A deterministic stream of standard-normal draws.
//
// The engine is std::mt19937_64 seeded through std::seed_seq with the 32-bit
// words (seed_lo, seed_hi, generation_lo, generation_hi, island, index). Both
// are fully specified by the standard, so a key maps to the same bits on every
// conforming library. Normals come from the Box-Muller transform over 53-bit
// uniforms and are consumed in pairs (cosine branch first).
class NormalStream {
 public:
  explicit NormalStream(const StreamKey& key);

  double Next();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace islandes

#endif  // ISLANDES_RANDOM_H_
