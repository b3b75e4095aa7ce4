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

#include "islandes/cli.h"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "CLI11.hpp"
#include "islandes/arc_task.h"
#include "islandes/checkpoint.h"
#include "islandes/config.h"
#include "islandes/error.h"
#include "islandes/evolution.h"
#include "islandes/reasoner.h"
#include "islandes/remote_reasoner.h"
#include "islandes/report.h"
#include "islandes/scoring.h"

namespace islandes::cli {

namespace fs = std::filesystem;

namespace {

std::vector<ArcTask> LoadTasks(const RunConfig& config) {
  if (config.task) return {LoadTask(*config.task)};
  return LoadTaskSet(*config.task_set);
}

std::string Fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

// Runs the remaining generations of `state`, writing the log, checkpoints and
// the best genotype under the manifest's output directory.
int Drive(const RunConfig& config, const RunManifest& manifest,
          RunState& state, std::span<const ArcTask> tasks,
          const ToyReasonerSpec& spec, std::ostream& err) {
  const EvolutionConfig& evo = config.evolution;
  ToyReasoner reasoner(spec);
  TaskScorer scorer(reasoner, tasks);

  std::ofstream curve(manifest.log_path, std::ios::binary | std::ios::trunc);
  if (!curve) {
    err << "error: cannot write " << manifest.log_path.string() << '\n';
    return kExitFailure;
  }
  curve << FormatCurve(state.history) << std::flush;

  ExecutionOptions options;
  options.workers_per_island = config.workers;
  options.on_generation = [&](const RunState& s) {
    const GenerationRecord& r = s.history.back();
    curve << FormatCurveRow(r) << '\n' << std::flush;
    err << "generation " << r.generation << "/" << evo.generations
        << " best_gen=" << Fixed(r.best_gen, 4)
        << " mean_gen=" << Fixed(r.mean_gen, 4)
        << " best_ever=" << Fixed(r.best_ever, 4)
        << " failures=" << r.failures << '\n';
    const bool due = config.checkpoint_every > 0 &&
                     r.generation % config.checkpoint_every == 0;
    if (due || r.generation == evo.generations) {
      WriteCheckpoint(CheckpointDirFor(manifest.checkpoint_dir, r.generation),
                      manifest, evo, s);
    }
  };
  ContinueRun(evo, scorer, state, options);

  WriteF64File(manifest.out_dir / "best.genotype",
               state.best_ever->genotype.values());
  err << "done: best_ever=" << Fixed(state.best_ever->score, 4) << " -> "
      << (manifest.out_dir / "best.genotype").string() << '\n';
  return kExitOk;
}

// Wraps a reasoner and reports each failed test pair with its kind.
class ReportingReasoner : public Reasoner {
 public:
  ReportingReasoner(const Reasoner& inner, std::ostream& err)
      : inner_(inner), err_(err) {}

  std::string Predict(const Genotype& genotype, const ArcTask& task,
                      const Grid& test_input) const override {
    try {
      return inner_.Predict(genotype, task, test_input);
    } catch (const RemoteError& e) {
      err_ << "warning: " << e.what() << " after " << e.attempts()
           << " attempt(s); pair scored 0\n";
      throw;
    } catch (const ReasonerError& e) {
      err_ << "warning: " << e.what() << "; pair scored 0\n";
      throw;
    }
  }
  bool concurrency_safe() const override { return false; }

 private:
  const Reasoner& inner_;
  std::ostream& err_;
};

}  // namespace

int Run(const RunArgs& args, std::ostream&, std::ostream& err) {
  RunConfig config;
  try {
    if (!fs::is_regular_file(args.config)) {
      err << "error: config file not found: " << args.config.string() << '\n';
      return kExitUsage;
    }
    config = LoadRunConfig(args.config);
    if (args.out_dir) config.out_dir = fs::absolute(*args.out_dir);
    if (args.workers) config.workers = *args.workers;
    if (!config.out_dir) {
      throw ConfigError("out_dir: not set in the config and no --out given");
    }
    if (config.workers == 0) throw ConfigError("workers: must be at least 1");
    ValidateForEvolution(config);
  } catch (const ConfigError& e) {
    err << "error: " << args.config.string() << ": " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    const std::vector<ArcTask> tasks = LoadTasks(config);
    const ToyReasonerSpec spec = InferToySpec(tasks);
    const Genotype base =
        config.base_genotype
            ? ReadGenotypeFile(*config.base_genotype, spec.param_layout)
            : Genotype::Zeros(spec.param_layout);

    fs::create_directories(*config.out_dir);
    const RunManifest manifest =
        RunManifest::Create(CanonicalConfigText(config), *config.out_dir);
    std::ofstream(manifest.out_dir / "run.json", std::ios::binary)
        << manifest.ToJson() << '\n';
    err << "run: " << tasks.size() << " task(s), " << spec.parameter_count()
        << " parameters, lambda=" << config.evolution.lambda
        << " islands=" << config.evolution.islands
        << " generations=" << config.evolution.generations << '\n';

    RunState state = StartRun(config.evolution, base);
    return Drive(config, manifest, state, tasks, spec, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

int Resume(const ResumeArgs& args, std::ostream&, std::ostream& err) {
  try {
    Checkpoint checkpoint = ReadCheckpoint(args.checkpoint);
    RunConfig config = ParseRunConfig(checkpoint.manifest.config_snapshot, {});
    if (args.workers) config.workers = *args.workers;
    RunState& state = checkpoint.state;
    if (state.completed_generations >= config.evolution.generations) {
      err << "run already complete at generation "
          << state.completed_generations << " of "
          << config.evolution.generations << "; nothing to resume\n";
      return kExitOk;
    }
    const std::vector<ArcTask> tasks = LoadTasks(config);
    const ToyReasonerSpec spec = InferToySpec(tasks);
    if (state.distribution.mean().partition() != *spec.param_layout) {
      throw IntegrityError("checkpoint partition does not match the tasks");
    }
    err << "resume: from generation " << state.completed_generations << " of "
        << config.evolution.generations << '\n';
    return Drive(config, checkpoint.manifest, state, tasks, spec, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

int Score(const ScoreArgs& args, std::ostream& out, std::ostream& err) {
  if (args.genotype.has_value() == args.remote.has_value()) {
    err << "error: give exactly one of --genotype or --remote\n";
    return kExitUsage;
  }
  try {
    const ArcTask task = LoadTask(args.task);
    TaskEvaluation result;
    if (args.genotype) {
      const ToyReasonerSpec spec = InferToySpec(task);
      const Genotype genotype =
          ReadGenotypeFile(*args.genotype, spec.param_layout);
      ToyReasoner toy(spec);
      result = Evaluate(ReportingReasoner(toy, err), genotype, task);
    } else {
      RemoteReasonerSpec spec;
      spec.endpoint = *args.remote;
      spec.timeout = std::chrono::milliseconds(
          static_cast<std::int64_t>(args.timeout_s * 1000.0));
      spec.max_retries = args.retries;
      RemoteReasoner remote(spec);
      // Remote models take no parameters; any genotype will do.
      const Genotype unused = Genotype::Zeros(
          std::make_shared<const LayerPartition>(
              LayerPartition::FromLengths({{"unused", 1}})));
      result = Evaluate(ReportingReasoner(remote, err), unused, task);
    }
    out << Fixed(result.score, 4) << '\n';
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

int Report(const ReportArgs& args, std::ostream&, std::ostream& err) {
  try {
    std::ifstream in(args.log, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + args.log.string());
    std::ostringstream text;
    text << in.rdbuf();
    const std::vector<GenerationRecord> records = ParseCurve(text.str());
    std::ofstream svg(args.out, std::ios::binary | std::ios::trunc);
    if (!svg) throw std::runtime_error("cannot write " + args.out.string());
    svg << RenderCurveSvg(records);
    err << "report: " << records.size() << " generation(s) -> "
        << args.out.string() << '\n';
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << args.log.string() << ": " << e.what() << '\n';
    return kExitFailure;
  }
}

int Main(int argc, const char* const* argv, std::ostream& out,
         std::ostream& err) {
  CLI::App app{"Island-model evolution strategy for ARC-style grid reasoners"};
  app.require_subcommand(1);

  RunArgs run_args;
  std::string run_config, run_out;
  std::size_t run_workers = 0;
  auto* run = app.add_subcommand("run", "Evolve a toy reasoner from a config");
  run->add_option("--config", run_config, "Config file")->required();
  run->add_option("--out", run_out, "Output directory (overrides out_dir)");
  run->add_option("--workers", run_workers,
                  "Concurrent evaluators per island (overrides workers)");

  std::string resume_checkpoint;
  std::size_t resume_workers = 0;
  auto* resume = app.add_subcommand("resume", "Continue a run from a checkpoint");
  resume->add_option("--checkpoint", resume_checkpoint,
                     "Checkpoint directory or checkpoint.json")
      ->required();
  resume->add_option("--workers", resume_workers,
                     "Concurrent evaluators per island");

  ScoreArgs score_args;
  std::string score_task, score_genotype, score_remote;
  auto* score = app.add_subcommand("score", "Score one task");
  score->add_option("--task", score_task, "ARC task file")->required();
  auto* genotype_opt =
      score->add_option("--genotype", score_genotype, "Toy genotype file");
  auto* remote_opt =
      score->add_option("--remote", score_remote, "Remote reasoner endpoint");
  genotype_opt->excludes(remote_opt);
  score->add_option("--timeout", score_args.timeout_s,
                    "Remote timeout in seconds");
  score->add_option("--retries", score_args.retries,
                    "Remote retries on transport failure");

  std::string report_log, report_out;
  auto* report = app.add_subcommand("report", "Plot a convergence log as SVG");
  report->add_option("--log", report_log, "curve.csv")->required();
  report->add_option("--out", report_out, "SVG output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream message;
    const int code = app.exit(e, message, message);
    (code == 0 ? out : err) << message.str();
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (run->parsed()) {
    run_args.config = run_config;
    if (!run_out.empty()) run_args.out_dir = run_out;
    if (run_workers > 0) run_args.workers = run_workers;
    return Run(run_args, out, err);
  }
  if (resume->parsed()) {
    ResumeArgs args{resume_checkpoint, std::nullopt};
    if (resume_workers > 0) args.workers = resume_workers;
    return Resume(args, out, err);
  }
  if (score->parsed()) {
    score_args.task = score_task;
    if (*genotype_opt) score_args.genotype = score_genotype;
    if (*remote_opt) score_args.remote = score_remote;
    return Score(score_args, out, err);
  }
  ReportArgs args{report_log, report_out};
  return Report(args, out, err);
}

}  // namespace islandes::cli
