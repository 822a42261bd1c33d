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

#ifndef TIP_COST_COSTS_H_
#define TIP_COST_COSTS_H_

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "tip/common.h"
#include "tip/env/environment.h"
#include "tip/gp/gp_posterior.h"
#include "tip/planner/icem.h"

namespace tip::cost {

enum class CostKind { kGreedy, kExploreJoint, kExploreSummed, kTip, kTipSummed };

CostKind ParseCostKind(std::string_view name);
std::string CostName(CostKind kind);

// Batched transition function: next-state columns for state/action columns.
using BatchDynamics =
    std::function<Matrix(const Matrix& states, const Matrix& actions)>;

BatchDynamics GroundTruthDynamics(const env::Environment& env);

// Rolls every candidate action sequence out from `start` in one batch.
// Actions are clipped to the environment bounds.
std::vector<Trajectory> RolloutBatch(
    const BatchDynamics& dynamics, const env::Environment& env,
    const Vector& start,
    const std::vector<planner::ActionSequence>& candidates);

// Model inputs (state ++ action) of a trajectory's transitions, as columns.
Matrix QueryPoints(const Trajectory& trajectory);

// Negative return.
double GreedyCost(const env::Environment& env, const Trajectory& trajectory);

// -sum_d log|Sigma_d(X | D)| with X the query columns.
double ExploreCostJoint(const Matrix& query, const gp::GpPosterior& posterior);
// -sum_d sum_i log sigma^2_d(x_i | D).
double ExploreCostSummed(const Matrix& query,
                         const gp::GpPosterior& posterior);

struct OptimalTrajectorySamples {
  uint64_t snapshot = 0;
  int m = 0;
  int n = 0;
  // Row-major over (start i, function j); dropped cells are absent.
  std::vector<Trajectory> trajectories;
  std::vector<std::string> warnings;
};

// For each of m start states and n posterior function samples, runs greedy
// MPC on the sampled function for a full episode and records the resulting
// trajectory. A failing cell is retried once with a fresh seed and then
// dropped with a warning.
OptimalTrajectorySamples SampleOptimalTrajectories(
    const gp::GpPosterior& posterior, const env::Environment& env,
    const planner::PlannerConfig& config, int m, int n, uint64_t seed);

// Greedy MPC for one episode of the environment horizon. Candidates are
// scored by the negative return averaged over rollouts on `models`; the
// first `config.replan_period` actions of the best plan are executed with
// `execute`. When `planned_points` is given, the model inputs of each
// executed plan (rolled out on the first model) are appended to it.
Trajectory GreedyMpcEpisode(const std::vector<BatchDynamics>& models,
                            const BatchDynamics& execute,
                            const env::Environment& env,
                            const planner::PlannerConfig& config,
                            const Vector& start, uint64_t seed,
                            std::vector<Matrix>* planned_points = nullptr);

// Mean greedy cost of each candidate over rollouts on `models`.
std::vector<double> GreedyCostBatch(
    const std::vector<BatchDynamics>& models, const env::Environment& env,
    const Vector& start,
    const std::vector<planner::ActionSequence>& candidates);

// (1/|cells|) sum_cells sum_d log|Sigma_d(X | D + tau*)| - sum_d
// log|Sigma_d(X | D)|. Always <= 0 up to round-off. Throws InvalidArgument
// when the samples were drawn under a different dataset.
double TipCost(const Matrix& query, const gp::GpPosterior& posterior,
               const OptimalTrajectorySamples& samples);
// Sum over query points of the singleton TipCost.
double TipCostSummed(const Matrix& query, const gp::GpPosterior& posterior,
                     const OptimalTrajectorySamples& samples);

// Scores many query sets against one (posterior, samples) pair. The
// per-cell conditioned factors are computed once at construction; every
// query then costs two triangular solves per (cell, output dim).
class TipCostEvaluator {
 public:
  TipCostEvaluator(const gp::GpPosterior& posterior,
                   const OptimalTrajectorySamples& samples);

  double Joint(const Matrix& query) const;
  double Summed(const Matrix& query) const;
  // Singleton value of every query column.
  Vector Pointwise(const Matrix& query) const;

  // OpenMP over queries.
  std::vector<double> JointBatch(const std::vector<Matrix>& queries) const;
  std::vector<double> SummedBatch(const std::vector<Matrix>& queries) const;

  // Same values via ConditionNoiseless + PredictJoint per cell; kept as the
  // reference implementation for tests and benchmarks.
  std::vector<double> JointBatchReference(
      const std::vector<Matrix>& queries) const;

  int num_cells() const { return static_cast<int>(cells_.size()); }

 private:
  struct Cell {
    Matrix inputs;                    // novel tau* inputs, input_dim x M
    std::vector<Matrix> cross;        // per dim: L^-1 K(D, tau*), N x M
    std::vector<Matrix> schur_lower;  // per dim: chol of the Schur block
  };

  // C^-1 (K(tau*, X) - B' V1) for output dim `dim`.
  Matrix Whitened(const Cell& cell, int dim, const Matrix& query,
                  const Matrix& v1) const;
  // Joint log-determinant ratio, or per-column log marginal variance
  // ratios written to `pointwise` (which must then be non-null).
  double Evaluate(const Matrix& query, bool joint, Vector* pointwise) const;

  gp::GpPosterior posterior_;
  OptimalTrajectorySamples samples_;
  std::vector<Cell> cells_;
};

}  // namespace tip::cost

#endif  // TIP_COST_COSTS_H_
