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

// Straightforward single-threaded version of the island evolution loop, kept
// for tests and benchmarks. It materializes every offspring, keeps each
// island's full evaluation history, and picks elites by stable-sorting that
// history, with no in-place pool. It shares only sampling and averaging with
// the production engine.

#ifndef ISLANDES_REFERENCE_SERIAL_RUN_H_
#define ISLANDES_REFERENCE_SERIAL_RUN_H_

#include <vector>

#include "islandes/evolution.h"

namespace islandes::reference {

struct ScoredOrigin {
  Origin origin;
  double score = 0.0;
};

struct GenerationTrace {
  GenerationRecord record;
  // Per island, the selected elites in rank order.
  std::vector<std::vector<ScoredOrigin>> elites;
  Genotype mean_after;
};

struct RunTrace {
  std::vector<double> variance;
  std::vector<GenerationTrace> generations;
  ScoredOrigin best;
  Genotype best_genotype;
};

RunTrace SerialRun(const EvolutionConfig& config, const Scorer& scorer,
                   const Genotype& base);

}  // namespace islandes::reference

#endif  // ISLANDES_REFERENCE_SERIAL_RUN_H_
