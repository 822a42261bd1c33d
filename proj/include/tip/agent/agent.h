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

#ifndef TIP_AGENT_AGENT_H_
#define TIP_AGENT_AGENT_H_

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "tip/common.h"
#include "tip/cost/costs.h"
#include "tip/env/environment.h"
#include "tip/gp/gp_posterior.h"
#include "tip/planner/icem.h"

namespace tip::agent {

enum class Algorithm {
  kTip,
  kStip,
  kDip,
  kSdip,
  kMpc,
  kOtip,
  kOmpc,
  kOdip,
  kBarl,
  kEigT,
  kMpcGroundTruth,
};

enum class Mode { kClosedLoop, kOpenLoop, kTqrl };

Algorithm ParseAlgorithm(std::string_view name);
std::string AlgorithmName(Algorithm algorithm);
const std::vector<std::string>& AlgorithmNames();
Mode AlgorithmMode(Algorithm algorithm);
cost::CostKind AlgorithmCost(Algorithm algorithm);

// Planner settings per environment. Open-loop problems plan the whole
// episode at once, so their replan period equals the horizon.
planner::PlannerConfig DefaultPlannerConfig(const env::Environment& env);

// Training transitions between evaluations when none is configured.
int DefaultEvalEvery(const env::Environment& env, Algorithm algorithm);

struct AgentConfig {
  Algorithm algorithm = Algorithm::kTip;
  int k = 5;                 // posterior function samples per plan
  int m = 1;                 // start states for optimal-trajectory samples
  int n = 15;                // posterior functions per start state
  planner::PlannerConfig planner;
  int eval_episodes = 5;
  int budget = 200;          // true-environment transitions
  int eval_every = 0;        // transitions; 0 selects DefaultEvalEvery
  int refit_every = 0;       // transitions; 0 means eval_every
  int fit_restarts = 3;
  int fit_iterations = 100;
  int num_features = 512;
  int tqrl_candidates = 1000;
  int test_points = 500;     // uniform model-error test set
  uint64_t eval_seed = 12345;
  // Stop at the first evaluation whose mean return reaches
  // `solve_threshold`.
  bool stop_on_solve = false;
  double solve_threshold = std::numeric_limits<double>::infinity();

  void Validate(const env::Environment& env) const;
  int EffectiveEvalEvery(const env::Environment& env) const;
  int EffectiveRefitEvery(const env::Environment& env) const;
};

// Settings for `algorithm` on `env` with every field at its default.
AgentConfig DefaultAgentConfig(const env::Environment& env,
                               Algorithm algorithm);

struct StepRecord {
  int dataset_size = 0;  // after appending this transition
  Vector state;
  Vector action;
  Vector next_state;
  double plan_cost = 0.0;
};

struct EvalRecord {
  int transitions = 0;
  double mean_return = 0.0;
  std::vector<double> returns;
  double planner_mse = 0.0;
  double uniform_mse = 0.0;
};

struct RunTranscript {
  std::string env;
  std::string algorithm;
  uint64_t seed = 0;
  std::vector<StepRecord> steps;
  std::vector<EvalRecord> evals;
  std::vector<std::string> warnings;
  bool aborted = false;
  std::string error;
  // Wall-clock seconds per step; kept apart from the deterministic records.
  std::vector<double> step_seconds;

  int transitions() const { return static_cast<int>(steps.size()); }
};

struct EvalResult {
  double mean_return = 0.0;
  std::vector<double> returns;
  // Model inputs of every executed plan, rolled out on the planner's first
  // model.
  std::vector<Matrix> planned_points;
};

// Greedy MPC on the true environment with the negative return averaged
// over `k` posterior function samples. A null posterior plans with the
// ground-truth dynamics instead. Episode e starts from
// env.Reset(DeriveSeed(eval_seed, e)) and never touches any dataset.
EvalResult EvaluatePolicy(const gp::GpPosterior* posterior,
                          const env::Environment& env,
                          const planner::PlannerConfig& config, int episodes,
                          int k, int num_features, uint64_t sample_seed,
                          uint64_t eval_seed);

struct ModelErrors {
  double planner_mse = 0.0;
  double uniform_mse = 0.0;
};

// Seeded uniform state-action test set (columns of model inputs).
Matrix UniformTestSet(const env::Environment& env, int count, uint64_t seed);

// Mean squared one-step error of the posterior mean against the true
// dynamics, in delta space, over `planned_points` and over `test_set`.
ModelErrors ModelErrorDiagnostics(const gp::GpPosterior& posterior,
                                  const env::Environment& env,
                                  const std::vector<Matrix>& planned_points,
                                  const Matrix& test_set);

// Closed-loop Bayesian MPC.
// Index of the smallest entry; ties go to the first. Throws on empty input.
Eigen::Index FirstArgmin(const Vector& costs);

RunTranscript RunClosedLoop(const env::Environment& env,
                            const AgentConfig& config, uint64_t seed);
// One plan per trial, executed without replanning.
RunTranscript RunOpenLoop(const env::Environment& env,
                          const AgentConfig& config, uint64_t seed);
// Pointwise acquisition over uniform candidates with arbitrary queries.
RunTranscript RunTqrl(const env::Environment& env, const AgentConfig& config,
                      uint64_t seed);
// Dispatches on the algorithm's mode.
RunTranscript Run(const env::Environment& env, const AgentConfig& config,
                  uint64_t seed);

}  // namespace tip::agent

#endif  // TIP_AGENT_AGENT_H_
