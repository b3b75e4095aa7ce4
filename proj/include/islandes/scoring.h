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

#ifndef ISLANDES_SCORING_H_
#define ISLANDES_SCORING_H_

#include <cstddef>
#include <span>
#include <string_view>

#include "islandes/arc_task.h"
#include "islandes/genotype.h"
#include "islandes/reasoner.h"

namespace islandes {

// Edit distance with unit-cost insertions, deletions and substitutions.
// Single-row dynamic program over the shorter string.
std::size_t Levenshtein(std::string_view a, std::string_view b);

// 1 - lev(predicted, truth) / max(|predicted|, |truth|), in [0, 1].
// Two empty strings score 1.
double ScoreAnswer(std::string_view predicted, std::string_view truth);

struct TaskEvaluation {
  double score = 0.0;
  // Test pairs on which the reasoner failed; each contributed 0 to the score.
  std::size_t failures = 0;
};

// Mean answer score over the task's test pairs.
TaskEvaluation Evaluate(const Reasoner& reasoner, const Genotype& genotype,
                        const ArcTask& task);

// Mean of Evaluate() over the tasks, summed in list order. Throws
// std::invalid_argument on an empty task list.
TaskEvaluation MetaScore(const Reasoner& reasoner, const Genotype& genotype,
                         std::span<const ArcTask> tasks);

}  // namespace islandes

#endif  // ISLANDES_SCORING_H_
