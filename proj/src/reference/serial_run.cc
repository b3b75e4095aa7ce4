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

#include "islandes/reference/serial_run.h"

#include <algorithm>
#include <cmath>
#include <optional>

namespace islandes::reference {

namespace {

struct Candidate {
  ScoredOrigin scored;
  Genotype genotype;
};

}  // namespace

RunTrace SerialRun(const EvolutionConfig& config, const Scorer& scorer,
                   const Genotype& base) {
  config.Validate();
  const std::size_t per_island = config.lambda / config.islands;
  const std::size_t elites_per_island = config.mu / config.islands;

  SamplingDistribution dist(base, config.epsilon, config.sigma_floor);
  std::vector<std::vector<Candidate>> history(config.islands);
  std::optional<Candidate> best;
  std::size_t evaluations = 0;

  RunTrace trace{std::vector<double>(dist.variance().begin(),
                                     dist.variance().end()),
                 {},
                 {},
                 base};

  for (std::size_t g = 1; g <= config.generations; ++g) {
    GenerationTrace gen{GenerationRecord{}, {}, base};
    gen.record.generation = g;
    double score_sum = 0.0;
    std::optional<ScoredOrigin> best_gen;

    if (config.elite_mode == EliteMode::kPerGeneration) {
      for (auto& h : history) h.clear();
    }

    for (std::size_t z = 0; z < config.islands; ++z) {
      for (std::size_t i = 0; i < per_island; ++i) {
        const Origin origin{g, z, i};
        Genotype child = dist.Sample(NormalStream(KeyFor(config.seed, origin)));
        Evaluation e;
        try {
          e = scorer.Evaluate(child);
        } catch (...) {
          e = Evaluation{0.0, true};
        }
        if (!std::isfinite(e.score)) e = Evaluation{0.0, true};
        if (e.failed) ++gen.record.failures;
        score_sum += e.score;
        if (!best_gen || e.score > best_gen->score) {
          best_gen = ScoredOrigin{origin, e.score};
        }
        if (!best || e.score > best->scored.score) {
          best = Candidate{ScoredOrigin{origin, e.score}, child};
        }
        history[z].push_back(Candidate{{origin, e.score}, std::move(child)});
      }
    }

    std::vector<Genotype> elites;
    for (std::size_t z = 0; z < config.islands; ++z) {
      std::vector<const Candidate*> ranked;
      for (const Candidate& c : history[z]) ranked.push_back(&c);
      std::stable_sort(ranked.begin(), ranked.end(),
                       [](const Candidate* a, const Candidate* b) {
                         return a->scored.score > b->scored.score;
                       });
      ranked.resize(elites_per_island);
      std::vector<ScoredOrigin> selected;
      for (const Candidate* c : ranked) {
        selected.push_back(c->scored);
        elites.push_back(c->genotype);
      }
      gen.elites.push_back(std::move(selected));
    }

    evaluations += config.lambda;
    gen.record.best_gen = best_gen->score;
    gen.record.mean_gen = score_sum / static_cast<double>(config.lambda);
    gen.record.best_ever = best->scored.score;
    gen.record.evaluations = evaluations;

    dist.set_mean(Average(std::span<const Genotype>(elites)));
    gen.mean_after = dist.mean();
    trace.generations.push_back(std::move(gen));
  }

  trace.best = best->scored;
  trace.best_genotype = best->genotype;
  return trace;
}

}  // namespace islandes::reference
