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

#include "islandes/evolution.h"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "islandes/error.h"
#include "islandes/scoring.h"

namespace islandes {

void EvolutionConfig::Validate() const {
  if (islands == 0) throw ConfigError("islands: must be at least 1");
  if (lambda == 0) throw ConfigError("lambda: must be at least 1");
  if (lambda % islands != 0) {
    throw ConfigError("lambda: " + std::to_string(lambda) +
                      " is not divisible by islands=" +
                      std::to_string(islands));
  }
  if (mu % islands != 0 || mu / islands == 0) {
    throw ConfigError("mu: " + std::to_string(mu) +
                      " must be a positive multiple of islands=" +
                      std::to_string(islands));
  }
  if (mu > lambda) {
    throw ConfigError("mu: " + std::to_string(mu) + " exceeds lambda=" +
                      std::to_string(lambda));
  }
  if (generations == 0) throw ConfigError("generations: must be at least 1");
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw ConfigError("epsilon: must lie in [0, 1]");
  }
  if (!(sigma_floor >= 0.0) || !std::isfinite(sigma_floor)) {
    throw ConfigError("sigma_floor: must be a finite value >= 0");
  }
}

TaskScorer::TaskScorer(const Reasoner& reasoner,
                       std::span<const ArcTask> tasks)
    : reasoner_(reasoner), tasks_(tasks) {
  if (tasks_.empty()) throw std::invalid_argument("task scorer needs tasks");
}

Evaluation TaskScorer::Evaluate(const Genotype& genotype) const {
  const TaskEvaluation result = MetaScore(reasoner_, genotype, tasks_);
  return Evaluation{result.score, result.failures > 0};
}

IslandState::IslandState(std::size_t island_id, std::size_t capacity)
    : island_id_(island_id), capacity_(capacity) {
  if (capacity_ == 0) throw std::invalid_argument("elite pool needs a slot");
  pool_.reserve(capacity_);
}

bool IslandState::Admits(double score) const {
  return pool_.size() < capacity_ || score > pool_.back().score;
}

void IslandState::Insert(EliteEntry entry) {
  if (!Admits(entry.score)) {
    throw std::logic_error("offspring does not qualify for the elite pool");
  }
  if (full()) pool_.pop_back();
  const auto at = std::find_if(
      pool_.begin(), pool_.end(),
      [&](const EliteEntry& e) { return e.score < entry.score; });
  pool_.insert(at, std::move(entry));
}

OffspringStats IslandStep(IslandState& state, const SamplingDistribution& dist,
                          std::size_t count, const Scorer& scorer,
                          const StepContext& context) {
  if (count == 0) throw std::invalid_argument("island step needs offspring");
  if (!context.scores.empty() && context.scores.size() < count) {
    throw std::invalid_argument("score buffer is smaller than the offspring");
  }
  const int workers =
      scorer.concurrency_safe()
          ? static_cast<int>(std::max<std::size_t>(1, context.workers))
          : 1;
  auto origin_of = [&](std::size_t i) {
    return Origin{context.generation, state.island_id(), i};
  };

  std::vector<Evaluation> evaluations(count);
#pragma omp parallel num_threads(workers) if (workers > 1)
  {
    Genotype offspring = dist.mean();
#pragma omp for schedule(dynamic)
    for (std::size_t i = 0; i < count; ++i) {
      dist.SampleInto(NormalStream(KeyFor(context.seed, origin_of(i))),
                      offspring);
      try {
        evaluations[i] = scorer.Evaluate(offspring);
      } catch (...) {
        evaluations[i] = Evaluation{0.0, true};
      }
    }
  }

  // Pool updates follow index order, whatever order the scores arrived in.
  OffspringStats stats;
  stats.evaluations = count;
  for (std::size_t i = 0; i < count; ++i) {
    Evaluation& e = evaluations[i];
    if (!std::isfinite(e.score)) e = Evaluation{0.0, true};
    if (e.failed) ++stats.failures;
    if (!context.scores.empty()) context.scores[i] = e.score;
    if (i == 0 || e.score > stats.best_score) {
      stats.best_score = e.score;
      stats.best_origin = origin_of(i);
    }
    if (state.Admits(e.score)) {
      const Origin origin = origin_of(i);
      state.Insert(EliteEntry{dist.Sample(NormalStream(
                                  KeyFor(context.seed, origin))),
                              e.score, origin});
    }
  }
  return stats;
}

Genotype Aggregate(std::span<const IslandState> islands) {
  std::vector<const Genotype*> elites;
  for (const IslandState& island : islands) {
    if (!island.full()) {
      throw std::invalid_argument("island " +
                                  std::to_string(island.island_id()) +
                                  " has an elite pool below capacity");
    }
    for (const EliteEntry& entry : island.pool()) {
      elites.push_back(&entry.genotype);
    }
  }
  return Average(std::span<const Genotype* const>(elites));
}

RunState StartRun(const EvolutionConfig& config, const Genotype& base) {
  config.Validate();
  RunState state{
      .completed_generations = 0,
      .distribution =
          SamplingDistribution(base, config.epsilon, config.sigma_floor),
      .islands = {},
      .history = {},
      .best_ever = std::nullopt,
  };
  state.islands.reserve(config.islands);
  for (std::size_t z = 0; z < config.islands; ++z) {
    state.islands.emplace_back(z, config.pool_capacity());
  }
  return state;
}

const GenerationRecord& RunGeneration(const EvolutionConfig& config,
                                      const Scorer& scorer, RunState& state,
                                      const ExecutionOptions& options) {
  if (state.completed_generations >= config.generations) {
    throw std::logic_error("run already completed all generations");
  }
  if (state.islands.size() != config.islands) {
    throw std::invalid_argument("run state does not match the island count");
  }
  const std::uint64_t generation = state.completed_generations + 1;
  const std::size_t per_island = config.offspring_per_island();
  const bool parallel = scorer.concurrency_safe();
  const int island_threads = parallel ? static_cast<int>(config.islands) : 1;
  if (parallel && options.workers_per_island > 1 &&
      omp_get_max_active_levels() < 2) {
    omp_set_max_active_levels(2);
  }

  if (config.elite_mode == EliteMode::kPerGeneration) {
    for (IslandState& island : state.islands) island.Clear();
  }

  std::vector<double> scores(config.lambda);
  std::vector<OffspringStats> stats(config.islands);
#pragma omp parallel for num_threads(island_threads) schedule(static, 1) \
    if (island_threads > 1)
  for (std::size_t z = 0; z < config.islands; ++z) {
    StepContext context{
        .seed = config.seed,
        .generation = generation,
        .workers = options.workers_per_island,
        .scores = std::span<double>(scores).subspan(z * per_island,
                                                    per_island),
    };
    stats[z] = IslandStep(state.islands[z], state.distribution, per_island,
                          scorer, context);
  }

  GenerationRecord record;
  record.generation = generation;
  std::size_t best_island = 0;
  for (std::size_t z = 0; z < config.islands; ++z) {
    record.failures += stats[z].failures;
    if (stats[z].best_score > stats[best_island].best_score) best_island = z;
  }
  record.best_gen = stats[best_island].best_score;
  double sum = 0.0;
  for (double s : scores) sum += s;
  record.mean_gen = sum / static_cast<double>(config.lambda);

  if (!state.best_ever || record.best_gen > state.best_ever->score) {
    const Origin origin = stats[best_island].best_origin;
    state.best_ever = EliteEntry{
        state.distribution.Sample(NormalStream(KeyFor(config.seed, origin))),
        record.best_gen, origin};
  }
  record.best_ever = state.best_ever->score;
  record.evaluations =
      (state.history.empty() ? 0 : state.history.back().evaluations) +
      config.lambda;

  state.distribution.set_mean(Aggregate(state.islands));
  state.history.push_back(record);
  state.completed_generations = generation;
  if (options.on_generation) options.on_generation(state);
  return state.history.back();
}

void ContinueRun(const EvolutionConfig& config, const Scorer& scorer,
                 RunState& state, const ExecutionOptions& options) {
  while (state.completed_generations < config.generations) {
    RunGeneration(config, scorer, state, options);
  }
}

RunState Run(const EvolutionConfig& config, const Scorer& scorer,
             const Genotype& base, const ExecutionOptions& options) {
  RunState state = StartRun(config, base);
  ContinueRun(config, scorer, state, options);
  return state;
}

}  // namespace islandes
