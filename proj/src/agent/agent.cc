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

#include "tip/agent/agent.h"

#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <sstream>

#include "tip/gp/dataset.h"
#include "tip/gp/function_sample.h"
#include "tip/gp/hyperparameter_fit.h"

namespace tip::agent {

namespace {

struct AlgorithmInfo {
  Algorithm algorithm;
  const char* name;
  Mode mode;
  cost::CostKind cost;
};

constexpr AlgorithmInfo kAlgorithms[] = {
    {Algorithm::kTip, "tip", Mode::kClosedLoop, cost::CostKind::kTip},
    {Algorithm::kStip, "stip", Mode::kClosedLoop, cost::CostKind::kTipSummed},
    {Algorithm::kDip, "dip", Mode::kClosedLoop, cost::CostKind::kExploreJoint},
    {Algorithm::kSdip, "sdip", Mode::kClosedLoop,
     cost::CostKind::kExploreSummed},
    {Algorithm::kMpc, "mpc", Mode::kClosedLoop, cost::CostKind::kGreedy},
    {Algorithm::kOtip, "otip", Mode::kOpenLoop, cost::CostKind::kTip},
    {Algorithm::kOmpc, "ompc", Mode::kOpenLoop, cost::CostKind::kGreedy},
    {Algorithm::kOdip, "odip", Mode::kOpenLoop, cost::CostKind::kExploreJoint},
    {Algorithm::kBarl, "barl", Mode::kTqrl, cost::CostKind::kTipSummed},
    {Algorithm::kEigT, "eig_t", Mode::kTqrl, cost::CostKind::kExploreSummed},
    {Algorithm::kMpcGroundTruth, "mpc_groundtruth", Mode::kClosedLoop,
     cost::CostKind::kGreedy},
};

const AlgorithmInfo& Info(Algorithm algorithm) {
  for (const auto& info : kAlgorithms) {
    if (info.algorithm == algorithm) return info;
  }
  throw InvalidArgument("unknown algorithm");
}

bool UsesTip(cost::CostKind kind) {
  return kind == cost::CostKind::kTip || kind == cost::CostKind::kTipSummed;
}

double Seconds(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       since)
      .count();
}

template <typename F>
std::vector<double> ParallelCosts(int count, F&& f) {
  std::vector<double> out(count);
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < count; ++i) {
    try {
      out[i] = f(i);
    } catch (...) {
#pragma omp critical(tip_agent_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
}

// Dataset, hyperparameters, posterior and the optimal-trajectory cache of
// one run.
class Learner {
 public:
  Learner(const env::Environment& env, const AgentConfig& config,
          uint64_t seed, RunTranscript* transcript)
      : env_(env),
        config_(config),
        seed_(seed),
        transcript_(transcript),
        data_(env.state_dim(), env.action_dim(), env.spec().periodic_dims),
        refit_every_(config.EffectiveRefitEvery(env)) {}

  gp::TransitionDataset& data() { return data_; }

  const gp::GpPosterior& Posterior() {
    if (posterior_ && built_at_ == data_.size()) return *posterior_;
    const int n = data_.size();
    if (hypers_.empty() || (n >= 2 && (fitted_at_ < 0 ||
                                       n - fitted_at_ >= refit_every_))) {
      gp::FitOptions opts;
      opts.restarts = config_.fit_restarts;
      opts.max_iterations = config_.fit_iterations;
      opts.seed = DeriveSeed(seed_, 0xf17, static_cast<uint64_t>(n));
      opts.input_range = env_.InputRange();
      const gp::FitResult fit = gp::FitHyperparameters(data_, opts);
      hypers_ = fit.hyperparams;
      if (!fit.used_fallback) fitted_at_ = n;
      for (const auto& w : fit.warnings) {
        if (n >= 2) transcript_->warnings.push_back(w);
      }
    }
    posterior_.emplace(data_, hypers_);
    built_at_ = n;
    ++version_;
    return *posterior_;
  }

  // Optimal-trajectory samples and scorer for the current posterior;
  // refreshed whenever the posterior was rebuilt.
  const cost::TipCostEvaluator& TipEvaluator() {
    const gp::GpPosterior& posterior = Posterior();
    if (!tip_evaluator_ || tip_version_ != version_) {
      const cost::OptimalTrajectorySamples samples =
          cost::SampleOptimalTrajectories(
              posterior, env_, config_.planner, config_.m, config_.n,
              DeriveSeed(seed_, 0x7a0,
                         static_cast<uint64_t>(data_.size())));
      for (const auto& w : samples.warnings) transcript_->warnings.push_back(w);
      tip_evaluator_ =
          std::make_unique<cost::TipCostEvaluator>(posterior, samples);
      tip_version_ = version_;
    }
    return *tip_evaluator_;
  }

 private:
  const env::Environment& env_;
  const AgentConfig& config_;
  uint64_t seed_;
  RunTranscript* transcript_;
  gp::TransitionDataset data_;
  int refit_every_;
  std::vector<gp::KernelHyperparams> hypers_;
  int fitted_at_ = -1;
  std::optional<gp::GpPosterior> posterior_;
  int built_at_ = -1;
  int version_ = 0;
  std::unique_ptr<cost::TipCostEvaluator> tip_evaluator_;
  int tip_version_ = -1;
};

// k posterior function samples (or the true dynamics) as batch models.
struct Models {
  std::vector<gp::PosteriorFunctionSample> samples;
  std::vector<cost::BatchDynamics> dynamics;
};

Models MakeModels(const gp::GpPosterior* posterior,
                  const env::Environment& env, int k, int num_features,
                  uint64_t seed) {
  Models models;
  if (posterior == nullptr) {
    models.dynamics.push_back(cost::GroundTruthDynamics(env));
    return models;
  }
  models.samples.reserve(k);
  for (int j = 0; j < k; ++j) {
    models.samples.push_back(gp::SamplePosteriorFunction(
        *posterior, num_features, DeriveSeed(seed, static_cast<uint64_t>(j))));
  }
  for (const auto& sample : models.samples) {
    const gp::PosteriorFunctionSample* ptr = &sample;
    models.dynamics.push_back(
        [ptr](const Matrix& s, const Matrix& a) { return ptr->Step(s, a); });
  }
  return models;
}

// Mean planning cost of each candidate over rollouts on every model.
std::vector<double> PlanningCosts(
    cost::CostKind kind, const Models& models, const env::Environment& env,
    const Vector& start,
    const std::vector<planner::ActionSequence>& candidates,
    const gp::GpPosterior* posterior,
    const cost::TipCostEvaluator* tip_evaluator) {
  if (kind == cost::CostKind::kGreedy) {
    return cost::GreedyCostBatch(models.dynamics, env, start, candidates);
  }
  const int count = static_cast<int>(candidates.size());
  std::vector<Matrix> queries;
  queries.reserve(models.dynamics.size() * count);
  for (const auto& model : models.dynamics) {
    for (const Trajectory& traj :
         cost::RolloutBatch(model, env, start, candidates)) {
      queries.push_back(cost::QueryPoints(traj));
    }
  }
  std::vector<double> per_query;
  switch (kind) {
    case cost::CostKind::kTip:
      per_query = tip_evaluator->JointBatch(queries);
      break;
    case cost::CostKind::kTipSummed:
      per_query = tip_evaluator->SummedBatch(queries);
      break;
    case cost::CostKind::kExploreJoint:
      per_query = ParallelCosts(static_cast<int>(queries.size()), [&](int i) {
        return cost::ExploreCostJoint(queries[i], *posterior);
      });
      break;
    case cost::CostKind::kExploreSummed:
      per_query = ParallelCosts(static_cast<int>(queries.size()), [&](int i) {
        return cost::ExploreCostSummed(queries[i], *posterior);
      });
      break;
    case cost::CostKind::kGreedy:
      break;
  }
  std::vector<double> costs(count, 0.0);
  for (size_t q = 0; q < per_query.size(); ++q) costs[q % count] += per_query[q];
  for (double& c : costs) c /= static_cast<double>(models.dynamics.size());
  return costs;
}

// Shared loop bookkeeping: appends a transition, evaluates when due.
class RunState {
 public:
  RunState(const env::Environment& env, const AgentConfig& config,
           uint64_t seed)
      : env_(env),
        config_(config),
        seed_(seed),
        eval_every_(config.EffectiveEvalEvery(env)),
        test_set_(UniformTestSet(env, config.test_points, 0x7e57)) {
    config.Validate(env);
    transcript_.env = env.name();
    transcript_.algorithm = AlgorithmName(config.algorithm);
    transcript_.seed = seed;
    learner_ = std::make_unique<Learner>(env, config, seed, &transcript_);
    last_step_ = std::chrono::steady_clock::now();
  }

  Learner& learner() { return *learner_; }
  RunTranscript& transcript() { return transcript_; }
  int transitions() const { return transcript_.transitions(); }
  bool done() const { return transitions() >= config_.budget || solved_; }

  // Records a transition; returns true when the run should stop.
  bool Record(const Vector& state, const Vector& action,
              const Vector& next_state, double plan_cost) {
    learner_->data().Append(state, action, next_state);
    StepRecord rec;
    rec.dataset_size = learner_->data().size();
    rec.state = state;
    rec.action = action;
    rec.next_state = next_state;
    rec.plan_cost = plan_cost;
    transcript_.steps.push_back(std::move(rec));
    transcript_.step_seconds.push_back(Seconds(last_step_));
    last_step_ = std::chrono::steady_clock::now();
    if (transitions() % eval_every_ == 0 || transitions() == config_.budget) {
      Evaluate();
    }
    return done();
  }

  void Evaluate() {
    const gp::GpPosterior& posterior = learner_->Posterior();
    const bool oracle = config_.algorithm == Algorithm::kMpcGroundTruth;
    const EvalResult result = EvaluatePolicy(
        oracle ? nullptr : &posterior, env_, config_.planner,
        config_.eval_episodes, config_.k, config_.num_features,
        DeriveSeed(seed_, 0xe7a, static_cast<uint64_t>(transitions())),
        config_.eval_seed);
    const ModelErrors errors =
        ModelErrorDiagnostics(posterior, env_, result.planned_points, test_set_);
    EvalRecord rec;
    rec.transitions = transitions();
    rec.mean_return = result.mean_return;
    rec.returns = result.returns;
    rec.planner_mse = errors.planner_mse;
    rec.uniform_mse = errors.uniform_mse;
    transcript_.evals.push_back(std::move(rec));
    if (config_.stop_on_solve && result.mean_return >= config_.solve_threshold) {
      solved_ = true;
    }
    last_step_ = std::chrono::steady_clock::now();
  }

  // Runs `attempt(seed)`, retrying once with a fresh seed. Returns false
  // (and marks the transcript aborted) when both attempts fail.
  template <typename F>
  bool WithRetry(uint64_t seed, F&& attempt) {
    try {
      attempt(seed);
      return true;
    } catch (const std::exception& first) {
      std::ostringstream msg;
      msg << "step " << transitions() << " failed, retrying: " << first.what();
      transcript_.warnings.push_back(msg.str());
    }
    try {
      attempt(DeriveSeed(seed, 0x7e7));
      return true;
    } catch (const std::exception& second) {
      transcript_.aborted = true;
      transcript_.error = second.what();
      return false;
    }
  }

  uint64_t seed() const { return seed_; }

 private:
  const env::Environment& env_;
  const AgentConfig& config_;
  uint64_t seed_;
  int eval_every_;
  Matrix test_set_;
  RunTranscript transcript_;
  std::unique_ptr<Learner> learner_;
  bool solved_ = false;
  std::chrono::steady_clock::time_point last_step_;
};

// One plan from `state` under the configured cost.
planner::IcemResult Plan(RunState& run, const env::Environment& env,
                         const AgentConfig& config, const Vector& state,
                         const planner::IcemWarmStart& warm, uint64_t seed) {
  const cost::CostKind kind = AlgorithmCost(config.algorithm);
  const bool oracle = config.algorithm == Algorithm::kMpcGroundTruth;
  const gp::GpPosterior* posterior =
      oracle ? nullptr : &run.learner().Posterior();
  const cost::TipCostEvaluator* tip =
      UsesTip(kind) ? &run.learner().TipEvaluator() : nullptr;
  const Models models =
      MakeModels(posterior, env, config.k, config.num_features,
                 DeriveSeed(seed, 0x5a3));
  const planner::CostEvaluator evaluate =
      [&](const std::vector<planner::ActionSequence>& candidates) {
        return PlanningCosts(kind, models, env, state, candidates, posterior,
                             tip);
      };
  return planner::IcemOptimize(evaluate, config.planner, warm,
                               DeriveSeed(seed, 0x1ce));
}

}  // namespace

Algorithm ParseAlgorithm(std::string_view name) {
  for (const auto& info : kAlgorithms) {
    if (name == info.name) return info.algorithm;
  }
  throw InvalidArgument("unknown algorithm '" + std::string(name) + "'");
}

std::string AlgorithmName(Algorithm algorithm) { return Info(algorithm).name; }

const std::vector<std::string>& AlgorithmNames() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& info : kAlgorithms) out.emplace_back(info.name);
    return out;
  }();
  return names;
}

Mode AlgorithmMode(Algorithm algorithm) { return Info(algorithm).mode; }

cost::CostKind AlgorithmCost(Algorithm algorithm) {
  return Info(algorithm).cost;
}

planner::PlannerConfig DefaultPlannerConfig(const env::Environment& env) {
  planner::PlannerConfig c;
  c.action_low = env.spec().action_low;
  c.action_high = env.spec().action_high;
  const std::string& name = env.name();
  if (name == "pendulum") {
    c.population = 25;
    c.elites = 3;
    c.horizon = 20;
    c.iterations = 3;
    c.replan_period = 6;
  } else if (name == "cartpole") {
    c.population = 30;
    c.elites = 6;
    c.horizon = 15;
    c.iterations = 5;
    c.replan_period = 1;
  } else if (name == "lava_path") {
    c.population = 25;
    c.elites = 4;
    c.horizon = 20;
    c.iterations = 6;
    c.replan_period = 20;
  } else if (name == "nonlinear_gain_1" || name == "nonlinear_gain_2") {
    c.population = 50;
    c.elites = 6;
    c.horizon = 10;
    c.iterations = name == "nonlinear_gain_1" ? 6 : 8;
    c.replan_period = 10;
  } else {
    throw InvalidArgument("no planner defaults for environment '" + name + "'");
  }
  return c;
}

int DefaultEvalEvery(const env::Environment& env, Algorithm algorithm) {
  if (AlgorithmMode(algorithm) == Mode::kOpenLoop) return env.horizon();
  if (AlgorithmMode(algorithm) == Mode::kTqrl) return 10;
  if (env.name() == "pendulum") return 5;
  return 10;
}

void AgentConfig::Validate(const env::Environment& env) const {
  std::ostringstream err;
  if (k < 1) err << "k must be >= 1; ";
  if (m < 1 || n < 1) err << "m and n must be >= 1; ";
  if (eval_episodes < 1) err << "eval_episodes must be >= 1; ";
  if (budget < 1) err << "budget must be >= 1; ";
  if (eval_every < 0 || refit_every < 0) err << "cadences must be >= 0; ";
  if (fit_restarts < 1) err << "fit_restarts must be >= 1; ";
  if (num_features < gp::kMinNumFeatures) {
    err << "num_features must be >= " << gp::kMinNumFeatures << "; ";
  }
  if (tqrl_candidates < 1) err << "tqrl_candidates must be >= 1; ";
  if (test_points < 1) err << "test_points must be >= 1; ";
  if (AlgorithmMode(algorithm) == Mode::kOpenLoop) {
    if (!env.spec().fixed_start) {
      err << "open-loop control needs a fixed start state; ";
    }
    if (planner.horizon != env.horizon()) {
      err << "open-loop planning horizon must equal the episode length; ";
    }
  }
  if (!err.str().empty()) throw InvalidArgument("AgentConfig: " + err.str());
  planner.Validate(env.horizon());
}

int AgentConfig::EffectiveEvalEvery(const env::Environment& env) const {
  return eval_every > 0 ? eval_every : DefaultEvalEvery(env, algorithm);
}

int AgentConfig::EffectiveRefitEvery(const env::Environment& env) const {
  return refit_every > 0 ? refit_every : EffectiveEvalEvery(env);
}

AgentConfig DefaultAgentConfig(const env::Environment& env,
                               Algorithm algorithm) {
  AgentConfig config;
  config.algorithm = algorithm;
  config.planner = DefaultPlannerConfig(env);
  if (algorithm == Algorithm::kMpcGroundTruth) config.k = 1;
  return config;
}

EvalResult EvaluatePolicy(const gp::GpPosterior* posterior,
                          const env::Environment& env,
                          const planner::PlannerConfig& config, int episodes,
                          int k, int num_features, uint64_t sample_seed,
                          uint64_t eval_seed) {
  EvalResult out;
  const cost::BatchDynamics truth = cost::GroundTruthDynamics(env);
  for (int e = 0; e < episodes; ++e) {
    const Models models =
        MakeModels(posterior, env, k, num_features,
                   DeriveSeed(sample_seed, static_cast<uint64_t>(e)));
    const Vector start = env.Reset(DeriveSeed(eval_seed, e));
    const Trajectory traj = cost::GreedyMpcEpisode(
        models.dynamics, truth, env, config, start,
        DeriveSeed(eval_seed, 0xe7a1, static_cast<uint64_t>(e)),
        &out.planned_points);
    out.returns.push_back(env::TrajectoryReturn(env, traj));
  }
  double sum = 0.0;
  for (double r : out.returns) sum += r;
  out.mean_return = sum / static_cast<double>(episodes);
  return out;
}

Matrix UniformTestSet(const env::Environment& env, int count, uint64_t seed) {
  std::mt19937_64 rng(seed);
  Matrix x(env.state_dim() + env.action_dim(), count);
  for (int i = 0; i < count; ++i) {
    const Vector s = env.SampleState(rng);
    const Vector a = env.SampleAction(rng);
    x.col(i) = ModelInput(s, a);
  }
  return x;
}

namespace {

double DeltaMse(const gp::GpPosterior& posterior, const env::Environment& env,
                const Matrix& points) {
  if (points.cols() == 0) return 0.0;
  const int ds = env.state_dim();
  const Matrix predicted = posterior.PredictMean(points);
  double total = 0.0;
  for (Eigen::Index i = 0; i < points.cols(); ++i) {
    const Vector s = points.col(i).head(ds);
    const Vector a = points.col(i).tail(env.action_dim());
    const Vector truth =
        gp::StateDelta(s, env.Step(s, a), env.spec().periodic_dims);
    Vector err = predicted.col(i) - truth;
    for (int d : env.spec().periodic_dims) err(d) = gp::WrapAngle(err(d));
    total += err.squaredNorm();
  }
  return total / static_cast<double>(points.cols() * ds);
}

}  // namespace

ModelErrors ModelErrorDiagnostics(const gp::GpPosterior& posterior,
                                  const env::Environment& env,
                                  const std::vector<Matrix>& planned_points,
                                  const Matrix& test_set) {
  ModelErrors out;
  Eigen::Index total = 0;
  for (const Matrix& m : planned_points) total += m.cols();
  Matrix all(env.state_dim() + env.action_dim(), total);
  Eigen::Index col = 0;
  for (const Matrix& m : planned_points) {
    all.middleCols(col, m.cols()) = m;
    col += m.cols();
  }
  out.planner_mse = DeltaMse(posterior, env, all);
  out.uniform_mse = DeltaMse(posterior, env, test_set);
  return out;
}

Eigen::Index FirstArgmin(const Vector& costs) {
  if (costs.size() == 0) throw InvalidArgument("FirstArgmin: empty input");
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < costs.size(); ++i) {
    if (costs(i) < costs(best)) best = i;
  }
  return best;
}

RunTranscript RunClosedLoop(const env::Environment& env,
                            const AgentConfig& config, uint64_t seed) {
  if (AlgorithmMode(config.algorithm) != Mode::kClosedLoop) {
    throw InvalidArgument("RunClosedLoop: algorithm is not closed-loop");
  }
  RunState run(env, config, seed);
  const int replan = config.planner.replan_period;
  for (int episode = 0; !run.done(); ++episode) {
    Vector state =
        env.Reset(DeriveSeed(seed, 0xe0, static_cast<uint64_t>(episode)));
    planner::IcemWarmStart warm;
    planner::IcemResult plan;
    for (int t = 0; t < env.horizon() && !run.done(); ++t) {
      if (t % replan == 0) {
        const uint64_t plan_seed = DeriveSeed(
            seed, 0x91a, static_cast<uint64_t>(run.transitions()));
        const bool ok = run.WithRetry(plan_seed, [&](uint64_t s) {
          plan = Plan(run, env, config, state, warm, s);
        });
        if (!ok) return std::move(run.transcript());
        warm = planner::ShiftWarmStart(plan, replan, config.planner);
      }
      const Vector action = env.ClipAction(plan.best_actions.col(t % replan));
      const Vector next = env.Step(state, action);
      if (run.Record(state, action, next, plan.best_cost)) break;
      state = next;
    }
  }
  return std::move(run.transcript());
}

RunTranscript RunOpenLoop(const env::Environment& env,
                          const AgentConfig& config, uint64_t seed) {
  if (AlgorithmMode(config.algorithm) != Mode::kOpenLoop) {
    throw InvalidArgument("RunOpenLoop: algorithm is not open-loop");
  }
  RunState run(env, config, seed);
  for (int trial = 0; !run.done(); ++trial) {
    Vector state = env.Reset(0);
    planner::IcemResult plan;
    const uint64_t plan_seed =
        DeriveSeed(seed, 0x0a1, static_cast<uint64_t>(trial));
    const bool ok = run.WithRetry(plan_seed, [&](uint64_t s) {
      plan = Plan(run, env, config, state, {}, s);
    });
    if (!ok) break;
    for (int t = 0; t < env.horizon(); ++t) {
      const Vector action = env.ClipAction(plan.best_actions.col(t));
      const Vector next = env.Step(state, action);
      if (run.Record(state, action, next, plan.best_cost)) break;
      state = next;
    }
  }
  return std::move(run.transcript());
}

RunTranscript RunTqrl(const env::Environment& env, const AgentConfig& config,
                      uint64_t seed) {
  if (AlgorithmMode(config.algorithm) != Mode::kTqrl) {
    throw InvalidArgument("RunTqrl: algorithm is not a query-mode method");
  }
  RunState run(env, config, seed);
  const cost::CostKind kind = AlgorithmCost(config.algorithm);
  for (int round = 0; !run.done(); ++round) {
    Vector state;
    Vector action;
    double score = 0.0;
    const bool ok = run.WithRetry(
        DeriveSeed(seed, 0xc4d, static_cast<uint64_t>(round)),
        [&](uint64_t s) {
          const Matrix candidates =
              UniformTestSet(env, config.tqrl_candidates, s);
          Vector costs;
          if (kind == cost::CostKind::kTipSummed) {
            costs = run.learner().TipEvaluator().Pointwise(candidates);
          } else {
            const Matrix var = run.learner().Posterior().PredictVariance(
                candidates);
            costs = -var.array().log().colwise().sum().transpose();
          }
          const Eigen::Index best = FirstArgmin(costs);
          state = candidates.col(best).head(env.state_dim());
          action = candidates.col(best).tail(env.action_dim());
          score = costs(best);
        });
    if (!ok) break;
    run.Record(state, action, env.Query(state, action), score);
  }
  return std::move(run.transcript());
}

RunTranscript Run(const env::Environment& env, const AgentConfig& config,
                  uint64_t seed) {
  switch (AlgorithmMode(config.algorithm)) {
    case Mode::kClosedLoop:
      return RunClosedLoop(env, config, seed);
    case Mode::kOpenLoop:
      return RunOpenLoop(env, config, seed);
    case Mode::kTqrl:
      return RunTqrl(env, config, seed);
  }
  throw InvalidArgument("unknown mode");
}

}  // namespace tip::agent
