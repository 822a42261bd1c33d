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

#include "tip/cost/costs.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <sstream>

#include "tip/gp/function_sample.h"
#include "tip/gp/kernel.h"

namespace tip::cost {

CostKind ParseCostKind(std::string_view name) {
  if (name == "greedy") return CostKind::kGreedy;
  if (name == "explore_joint") return CostKind::kExploreJoint;
  if (name == "explore_summed") return CostKind::kExploreSummed;
  if (name == "tip") return CostKind::kTip;
  if (name == "tip_summed") return CostKind::kTipSummed;
  throw InvalidArgument("unknown cost '" + std::string(name) + "'");
}

std::string CostName(CostKind kind) {
  switch (kind) {
    case CostKind::kGreedy:
      return "greedy";
    case CostKind::kExploreJoint:
      return "explore_joint";
    case CostKind::kExploreSummed:
      return "explore_summed";
    case CostKind::kTip:
      return "tip";
    case CostKind::kTipSummed:
      return "tip_summed";
  }
  return "unknown";
}

BatchDynamics GroundTruthDynamics(const env::Environment& env) {
  return [&env](const Matrix& states, const Matrix& actions) {
    return env.StepBatch(states, actions);
  };
}

std::vector<Trajectory> RolloutBatch(
    const BatchDynamics& dynamics, const env::Environment& env,
    const Vector& start,
    const std::vector<planner::ActionSequence>& candidates) {
  const int count = static_cast<int>(candidates.size());
  std::vector<Trajectory> out(count);
  if (count == 0) return out;
  const int h = static_cast<int>(candidates[0].cols());
  const Vector& lo = env.spec().action_low;
  const Vector& hi = env.spec().action_high;

  Matrix states = start.replicate(1, count);
  Matrix actions(env.action_dim(), count);
  for (auto& traj : out) {
    traj.states.reserve(h + 1);
    traj.actions.reserve(h);
    traj.states.push_back(start);
  }
  for (int t = 0; t < h; ++t) {
    for (int c = 0; c < count; ++c) {
      actions.col(c) = candidates[c].col(t).cwiseMax(lo).cwiseMin(hi);
    }
    states = dynamics(states, actions);
    for (int c = 0; c < count; ++c) {
      out[c].actions.push_back(actions.col(c));
      out[c].states.push_back(states.col(c));
    }
  }
  return out;
}

Matrix QueryPoints(const Trajectory& trajectory) {
  if (trajectory.empty()) return Matrix(0, 0);
  const int ds = static_cast<int>(trajectory.states[0].size());
  const int da = static_cast<int>(trajectory.actions[0].size());
  Matrix x(ds + da, trajectory.length());
  for (int i = 0; i < trajectory.length(); ++i) {
    x.col(i).head(ds) = trajectory.states[i];
    x.col(i).tail(da) = trajectory.actions[i];
  }
  return x;
}

double GreedyCost(const env::Environment& env, const Trajectory& trajectory) {
  return -env::TrajectoryReturn(env, trajectory);
}

double ExploreCostJoint(const Matrix& query, const gp::GpPosterior& posterior) {
  const gp::JointPrediction pred = posterior.PredictJoint(query);
  double total = 0.0;
  for (const Matrix& cov : pred.covariance) total += gp::JointEntropy(cov);
  return -total;
}

double ExploreCostSummed(const Matrix& query,
                         const gp::GpPosterior& posterior) {
  if (query.cols() == 0) {
    throw InvalidArgument("ExploreCostSummed: empty query set");
  }
  return -posterior.PredictVariance(query).array().log().sum();
}

std::vector<double> GreedyCostBatch(
    const std::vector<BatchDynamics>& models, const env::Environment& env,
    const Vector& start,
    const std::vector<planner::ActionSequence>& candidates) {
  std::vector<double> costs(candidates.size(), 0.0);
  for (const auto& model : models) {
    const std::vector<Trajectory> rollouts =
        RolloutBatch(model, env, start, candidates);
    for (size_t c = 0; c < candidates.size(); ++c) {
      costs[c] += GreedyCost(env, rollouts[c]);
    }
  }
  for (double& c : costs) c /= static_cast<double>(models.size());
  return costs;
}

Trajectory GreedyMpcEpisode(const std::vector<BatchDynamics>& models,
                            const BatchDynamics& execute,
                            const env::Environment& env,
                            const planner::PlannerConfig& config,
                            const Vector& start, uint64_t seed,
                            std::vector<Matrix>* planned_points) {
  if (models.empty()) throw InvalidArgument("GreedyMpcEpisode: no models");
  config.Validate(env.horizon());
  Trajectory traj;
  traj.states.push_back(start);
  planner::IcemWarmStart warm;
  int t = 0;
  while (t < env.horizon()) {
    const Vector state = traj.states.back();
    const planner::CostEvaluator evaluate =
        [&](const std::vector<planner::ActionSequence>& candidates) {
          return GreedyCostBatch(models, env, state, candidates);
        };
    const planner::IcemResult plan = planner::IcemOptimize(
        evaluate, config, warm, DeriveSeed(seed, static_cast<uint64_t>(t)));
    if (planned_points != nullptr) {
      planned_points->push_back(QueryPoints(
          RolloutBatch(models[0], env, state, {plan.best_actions})[0]));
    }
    const int steps = std::min(config.replan_period, env.horizon() - t);
    for (int i = 0; i < steps; ++i) {
      const Vector a = env.ClipAction(plan.best_actions.col(i));
      Vector next = execute(traj.states.back(), a).col(0);
      if (!next.allFinite()) {
        throw NumericalError("GreedyMpcEpisode: non-finite state");
      }
      traj.actions.push_back(a);
      traj.states.push_back(std::move(next));
    }
    t += steps;
    warm = planner::ShiftWarmStart(plan, steps, config);
  }
  return traj;
}

OptimalTrajectorySamples SampleOptimalTrajectories(
    const gp::GpPosterior& posterior, const env::Environment& env,
    const planner::PlannerConfig& config, int m, int n, uint64_t seed) {
  if (m < 1 || n < 1) {
    throw InvalidArgument("SampleOptimalTrajectories: need m >= 1 and n >= 1");
  }
  OptimalTrajectorySamples out;
  out.snapshot = posterior.snapshot();
  out.m = m;
  out.n = n;

  const int cells = m * n;
  std::vector<Trajectory> results(cells);
  std::vector<std::string> failures(cells);
  std::vector<char> ok(cells, 0);

#pragma omp parallel for schedule(dynamic)
  for (int cell = 0; cell < cells; ++cell) {
    const int i = cell / n;
    const int j = cell % n;
    const Vector start =
        env.spec().fixed_start
            ? env.Reset(0)
            : env.Reset(DeriveSeed(seed, 0x57a27, static_cast<uint64_t>(i)));
    for (int attempt = 0; attempt < 2 && !ok[cell]; ++attempt) {
      const uint64_t cell_seed =
          DeriveSeed(seed, static_cast<uint64_t>(i), static_cast<uint64_t>(j),
                     static_cast<uint64_t>(attempt));
      try {
        const gp::PosteriorFunctionSample sample = gp::SamplePosteriorFunction(
            posterior, gp::kDefaultNumFeatures, cell_seed);
        const BatchDynamics dynamics = [&sample](const Matrix& s,
                                                 const Matrix& a) {
          return sample.Step(s, a);
        };
        results[cell] = GreedyMpcEpisode({dynamics}, dynamics, env, config,
                                         start, DeriveSeed(cell_seed, 1));
        ok[cell] = 1;
      } catch (const std::exception& e) {
        failures[cell] += (failures[cell].empty() ? "" : "; ") +
                          std::string(e.what());
      }
    }
  }

  for (int cell = 0; cell < cells; ++cell) {
    if (ok[cell]) {
      out.trajectories.push_back(std::move(results[cell]));
    } else {
      std::ostringstream msg;
      msg << "optimal trajectory cell (" << cell / n << ", " << cell % n
          << ") dropped: " << failures[cell];
      out.warnings.push_back(msg.str());
    }
  }
  return out;
}

namespace {

void CheckSnapshot(const gp::GpPosterior& posterior,
                   const OptimalTrajectorySamples& samples) {
  if (posterior.snapshot() != samples.snapshot) {
    throw InvalidArgument(
        "optimal trajectory samples were drawn under a different dataset "
        "snapshot");
  }
}

}  // namespace

double TipCost(const Matrix& query, const gp::GpPosterior& posterior,
               const OptimalTrajectorySamples& samples) {
  CheckSnapshot(posterior, samples);
  if (samples.trajectories.empty()) return 0.0;
  const gp::JointPrediction base = posterior.PredictJoint(query);
  std::vector<double> base_ld(base.covariance.size());
  for (size_t d = 0; d < base_ld.size(); ++d) {
    base_ld[d] = gp::JointEntropy(base.covariance[d]);
  }
  double total = 0.0;
  for (const Trajectory& traj : samples.trajectories) {
    const gp::JointPrediction cond =
        posterior.ConditionNoiseless(traj).PredictJoint(query);
    for (size_t d = 0; d < base_ld.size(); ++d) {
      total += gp::JointEntropy(cond.covariance[d]) - base_ld[d];
    }
  }
  return total / static_cast<double>(samples.trajectories.size());
}

double TipCostSummed(const Matrix& query, const gp::GpPosterior& posterior,
                     const OptimalTrajectorySamples& samples) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < query.cols(); ++i) {
    total += TipCost(query.col(i), posterior, samples);
  }
  return total;
}

}  // namespace tip::cost
