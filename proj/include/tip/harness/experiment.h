// Copyright 2026 The Trajectory Information Planning Authors
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

#ifndef TIP_HARNESS_EXPERIMENT_H_
#define TIP_HARNESS_EXPERIMENT_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "tip/agent/agent.h"
#include "tip/env/environment.h"
#include "tip/planner/icem.h"

namespace tip::harness {

struct ExperimentConfig {
  std::string env = "pendulum";
  std::string algorithm = "tip";
  std::vector<uint64_t> seeds = {0, 1, 2, 3, 4};
  int budget = 200;
  std::filesystem::path out_dir = "runs";
  // A seed solves at the first evaluation with mean return >=
  // threshold - (1 - solve_slack) * |threshold|.
  double solve_slack = 1.0;
  // Stop each seed at its first solving evaluation.
  bool stop_on_solve = false;
  bool plots = true;
  // Budget, algorithm and seeds above take precedence over the copies
  // inside `agent`.
  agent::AgentConfig agent;
};

// Defaults for the named environment and algorithm.
ExperimentConfig DefaultExperimentConfig(const std::string& env,
                                         const std::string& algorithm);

// Reads a YAML file. Keys not present keep their defaults; `env` and
// `algorithm` in the file select which defaults apply. Unknown keys are
// rejected. Non-empty `env` or `algorithm` replace the file's values.
ExperimentConfig LoadExperimentConfig(const std::filesystem::path& path,
                                      const std::string& env = "",
                                      const std::string& algorithm = "");
// Applies YAML text on top of `base`.
ExperimentConfig ApplyConfigYaml(const std::string& yaml,
                                 const ExperimentConfig& base);
std::string DumpConfigYaml(const ExperimentConfig& config);

// Throws InvalidArgument for unknown names or inconsistent settings.
void ValidateExperimentConfig(const ExperimentConfig& config);

// Mean return of ground-truth MPC over `episodes` evaluation episodes.
// Memoized per (environment, planner settings, episodes, seed).
double ComputeSolveThreshold(const env::Environment& env,
                             const planner::PlannerConfig& config,
                             int episodes, uint64_t eval_seed);

double EffectiveThreshold(double threshold, double solve_slack);

// Transitions at the first evaluation reaching `threshold`, or -1.
int TransitionsToSolve(const agent::RunTranscript& transcript,
                       double threshold);

// Median with unsolved runs (-1) imputed as budget + 1.
double MedianTransitions(const std::vector<int>& solved_at, int budget);
// The median as printed in tables: ">budget" when it exceeds the budget.
std::string FormatMedian(double median, int budget);

struct SeedOutcome {
  uint64_t seed = 0;
  int solved_at = -1;
  int transitions = 0;
  bool crashed = false;
  std::string error;
  std::vector<std::string> warnings;
};

struct SampleComplexityReport {
  std::string env;
  std::string algorithm;
  int budget = 0;
  int eval_every = 0;
  double threshold = 0.0;
  double solve_slack = 1.0;
  double effective_threshold = 0.0;
  std::vector<SeedOutcome> seeds;
  double median = 0.0;
  std::string median_text;
};

std::string ReportJson(const SampleComplexityReport& report);
SampleComplexityReport ParseReportJson(const std::string& json);

// Runs every seed (in parallel, at most TIP_THREADS at once), writes all
// artifacts under config.out_dir and returns the report. A seed that throws
// is recorded as unsolved and never stops the others.
SampleComplexityReport RunExperiment(const ExperimentConfig& config);

// Recomputes the report from the learning curves under `out_dir`.
SampleComplexityReport RebuildReport(const std::filesystem::path& out_dir);

// Learning-curve CSV: one row per evaluation with columns seed,
// transitions, mean_return, return_0.., planner_mse, uniform_mse.
std::string LearningCurveCsv(uint64_t seed,
                             const std::vector<agent::EvalRecord>& evals);
std::vector<agent::EvalRecord> ParseLearningCurveCsv(const std::string& csv,
                                                     uint64_t* seed = nullptr);

// Per-step records as CSV (dataset size, state, action, next state, cost).
std::string TranscriptCsv(const agent::RunTranscript& transcript);

// Line chart of mean return against transitions, one line per seed.
std::string LearningCurveSvg(
    const std::vector<std::pair<uint64_t, std::vector<agent::EvalRecord>>>&
        curves,
    double threshold, const std::string& title);

// Worker count: TIP_THREADS when set and positive, else the hardware
// concurrency.
int WorkerLimit();

}  // namespace tip::harness

#endif  // TIP_HARNESS_EXPERIMENT_H_
