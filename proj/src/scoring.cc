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

#include "islandes/scoring.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "islandes/error.h"

namespace islandes {

std::size_t Levenshtein(std::string_view a, std::string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  // b is the shorter string; row[j] = distance(a[0, i), b[0, j)).
  std::vector<std::size_t> row(b.size() + 1);
  std::iota(row.begin(), row.end(), std::size_t{0});
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diagonal = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t above = row[j];
      const std::size_t substitute = diagonal + (a[i - 1] == b[j - 1] ? 0 : 1);
      row[j] = std::min({above + 1, row[j - 1] + 1, substitute});
      diagonal = above;
    }
  }
  return row[b.size()];
}

double ScoreAnswer(std::string_view predicted, std::string_view truth) {
  const std::size_t longest = std::max(predicted.size(), truth.size());
  if (longest == 0) return 1.0;
  return 1.0 - static_cast<double>(Levenshtein(predicted, truth)) /
                   static_cast<double>(longest);
}

TaskEvaluation Evaluate(const Reasoner& reasoner, const Genotype& genotype,
                        const ArcTask& task) {
  TaskEvaluation result;
  double sum = 0.0;
  for (const GridPair& pair : task.test) {
    try {
      const std::string answer = reasoner.Predict(genotype, task, pair.input);
      sum += ScoreAnswer(answer, SerializeGrid(pair.output));
    } catch (const ReasonerError&) {
      ++result.failures;
    } catch (const std::invalid_argument&) {
      ++result.failures;
    }
  }
  result.score = task.test.empty()
                     ? 0.0
                     : sum / static_cast<double>(task.test.size());
  return result;
}

TaskEvaluation MetaScore(const Reasoner& reasoner, const Genotype& genotype,
                         std::span<const ArcTask> tasks) {
  if (tasks.empty()) throw std::invalid_argument("meta-score needs tasks");
  TaskEvaluation result;
  double sum = 0.0;
  for (const ArcTask& task : tasks) {
    const TaskEvaluation one = Evaluate(reasoner, genotype, task);
    sum += one.score;
    result.failures += one.failures;
  }
  result.score = sum / static_cast<double>(tasks.size());
  return result;
}

}  // namespace islandes
