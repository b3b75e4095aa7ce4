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

// Island-model evolution strategy over genotypes.
//
// Each generation, every island samples lambda/Z offspring from
// N(mean, diag(variance)), scores them, and offers them to its elite pool of
// mu/Z slots. At the barrier the new mean is the average of all pooled
// elites in island-major, slot-minor order. The variance is derived once from
// the base genotype and never changes.
//
// Offspring are identified by (seed, generation, island, index). Their
// genotypes are dropped right after scoring; the few that enter a pool or
// become the best-ever are re-sampled from their stream key. The results are
// therefore independent of the number of threads.

#ifndef ISLANDES_EVOLUTION_H_
#define ISLANDES_EVOLUTION_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "islandes/arc_task.h"
#include "islandes/genotype.h"
#include "islandes/random.h"
#include "islandes/reasoner.h"

namespace islandes {

enum class EliteMode {
  // Pools persist across generations: an offspring enters only by beating the
  // worst elite found so far.
  kPersistent,
  // Pools are emptied at the start of each generation.
  kPerGeneration,
};

struct EvolutionConfig {
  std::size_t lambda = 0;  // offspring per generation, all islands
  std::size_t mu = 0;      // elites per generation, all islands
  std::size_t islands = 1;
  std::size_t generations = 1;
  double epsilon = 0.0;
  double sigma_floor = 0.01;
  std::uint64_t seed = 0;
  EliteMode elite_mode = EliteMode::kPersistent;

  // Throws ConfigError naming the offending key.
  void Validate() const;

  std::size_t offspring_per_island() const { return lambda / islands; }
  std::size_t pool_capacity() const { return mu / islands; }
};

struct Evaluation {
  double score = 0.0;
  bool failed = false;
};

// Fitness of a genotype, higher is better.
class Scorer {
 public:
  virtual ~Scorer() = default;
  virtual Evaluation Evaluate(const Genotype& genotype) const = 0;
  virtual bool concurrency_safe() const { return true; }
};

// Mean reasoning score over a task list. A genotype counts as failed when the
// reasoner failed on any test pair.
class TaskScorer : public Scorer {
 public:
  TaskScorer(const Reasoner& reasoner, std::span<const ArcTask> tasks);

  Evaluation Evaluate(const Genotype& genotype) const override;
  bool concurrency_safe() const override {
    return reasoner_.concurrency_safe();
  }

 private:
  const Reasoner& reasoner_;
  std::span<const ArcTask> tasks_;
};

class FunctionScorer : public Scorer {
 public:
  explicit FunctionScorer(std::function<double(const Genotype&)> fn,
                          bool concurrency_safe = true)
      : fn_(std::move(fn)), concurrency_safe_(concurrency_safe) {}

  Evaluation Evaluate(const Genotype& genotype) const override {
    return Evaluation{fn_(genotype), false};
  }
  bool concurrency_safe() const override { return concurrency_safe_; }

 private:
  std::function<double(const Genotype&)> fn_;
  bool concurrency_safe_;
};

// Where an offspring came from; with the run seed this is its stream key.
struct Origin {
  std::uint64_t generation = 0;
  std::uint64_t island = 0;
  std::uint64_t index = 0;

  bool operator==(const Origin&) const = default;
};

inline StreamKey KeyFor(std::uint64_t seed, const Origin& origin) {
  return StreamKey{seed, origin.generation, origin.island, origin.index};
}

struct EliteEntry {
  Genotype genotype;
  double score = 0.0;
  Origin origin;
};

// Fixed-capacity elite pool, sorted by descending score with earlier
// insertions first among equal scores.
class IslandState {
 public:
  IslandState(std::size_t island_id, std::size_t capacity);

  // True while the pool has a free slot or `score` strictly beats the worst
  // elite.
  bool Admits(double score) const;
  // Inserts after all entries scoring >= entry.score, evicting the last entry
  // when full. Requires Admits(entry.score).
  void Insert(EliteEntry entry);
  void Clear() { pool_.clear(); }

  std::size_t island_id() const { return island_id_; }
  std::size_t capacity() const { return capacity_; }
  bool full() const { return pool_.size() == capacity_; }
  const std::vector<EliteEntry>& pool() const { return pool_; }

 private:
  std::size_t island_id_;
  std::size_t capacity_;
  std::vector<EliteEntry> pool_;
};

struct StepContext {
  std::uint64_t seed = 0;
  std::uint64_t generation = 1;
  std::size_t workers = 1;  // concurrent evaluations within the island
  // Optional, receives offspring scores in index order (size >= count).
  std::span<double> scores;
};

struct OffspringStats {
  std::size_t evaluations = 0;
  std::size_t failures = 0;
  double best_score = 0.0;
  Origin best_origin;  // earliest index among equal best scores
};

// Samples `count` offspring of one island, scores them and offers them to the
// pool in index order. Scorer exceptions count as failures with score 0.
OffspringStats IslandStep(IslandState& state, const SamplingDistribution& dist,
                          std::size_t count, const Scorer& scorer,
                          const StepContext& context);

// Average of every pooled elite in island-major, slot-minor order. Throws
// std::invalid_argument when a pool is below capacity.
Genotype Aggregate(std::span<const IslandState> islands);

// One row of the convergence log.
struct GenerationRecord {
  std::size_t generation = 0;
  double best_gen = 0.0;
  double mean_gen = 0.0;
  double best_ever = 0.0;
  std::size_t evaluations = 0;  // cumulative
  std::size_t failures = 0;     // this generation
};

// Complete resumable state of a run.
struct RunState {
  std::size_t completed_generations = 0;
  SamplingDistribution distribution;
  std::vector<IslandState> islands;
  std::vector<GenerationRecord> history;
  std::optional<EliteEntry> best_ever;
};

struct ExecutionOptions {
  std::size_t workers_per_island = 1;
  // Called after every generation barrier.
  std::function<void(const RunState&)> on_generation;
};

// Derives the fixed variance from `base` and builds empty pools.
RunState StartRun(const EvolutionConfig& config, const Genotype& base);

// Advances one generation. Requires completed_generations < generations.
const GenerationRecord& RunGeneration(const EvolutionConfig& config,
                                      const Scorer& scorer, RunState& state,
                                      const ExecutionOptions& options = {});

// Runs the remaining generations of `state`.
void ContinueRun(const EvolutionConfig& config, const Scorer& scorer,
                 RunState& state, const ExecutionOptions& options = {});

// StartRun followed by ContinueRun. The best-ever genotype is in
// state.best_ever.
RunState Run(const EvolutionConfig& config, const Scorer& scorer,
             const Genotype& base, const ExecutionOptions& options = {});

}  // namespace islandes

#endif  // ISLANDES_EVOLUTION_H_
