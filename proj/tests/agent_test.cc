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

#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "tip/agent/agent.h"
#include "tip/env/benchmarks.h"
#include "tip/gp/dataset.h"
#include "tip/gp/gp_posterior.h"

namespace tip::agent {
namespace {

void ExpectSameSteps(const RunTranscript& a, const RunTranscript& b) {
  ASSERT_EQ(a.steps.size(), b.steps.size());
  for (size_t i = 0; i < a.steps.size(); ++i) {
    EXPECT_EQ(a.steps[i].state, b.steps[i].state);
    EXPECT_EQ(a.steps[i].action, b.steps[i].action);
    EXPECT_EQ(a.steps[i].next_state, b.steps[i].next_state);
  }
}

// Cheap settings for runs that only check bookkeeping.
AgentConfig SmallConfig(const env::Environment& env, Algorithm algorithm,
                        int budget) {
  AgentConfig c = DefaultAgentConfig(env, algorithm);
  c.budget = budget;
  c.eval_episodes = 1;
  c.k = 2;
  c.n = 3;
  c.fit_restarts = 1;
  c.fit_iterations = 30;
  c.test_points = 50;
  c.tqrl_candidates = 50;
  return c;
}

TEST(AlgorithmTest, NamesRoundTripAndModes) {
  for (const std::string& name : AlgorithmNames()) {
    EXPECT_EQ(AlgorithmName(ParseAlgorithm(name)), name);
  }
  EXPECT_THROW(ParseAlgorithm("ppo"), InvalidArgument);
  EXPECT_EQ(AlgorithmMode(Algorithm::kTip), Mode::kClosedLoop);
  EXPECT_EQ(AlgorithmMode(Algorithm::kOtip), Mode::kOpenLoop);
  EXPECT_EQ(AlgorithmMode(Algorithm::kBarl), Mode::kTqrl);
  EXPECT_EQ(AlgorithmCost(Algorithm::kTip), cost::CostKind::kTip);
  EXPECT_EQ(AlgorithmCost(Algorithm::kStip), cost::CostKind::kTipSummed);
  EXPECT_EQ(AlgorithmCost(Algorithm::kDip), cost::CostKind::kExploreJoint);
  EXPECT_EQ(AlgorithmCost(Algorithm::kSdip), cost::CostKind::kExploreSummed);
  EXPECT_EQ(AlgorithmCost(Algorithm::kMpc), cost::CostKind::kGreedy);
}

TEST(AgentConfigTest, OpenLoopNeedsFixedStartAndFullHorizon) {
  env::Pendulum pendulum;
  AgentConfig c = DefaultAgentConfig(pendulum, Algorithm::kOtip);
  EXPECT_THROW(c.Validate(pendulum), InvalidArgument);
  env::LavaPath lava;
  c = DefaultAgentConfig(lava, Algorithm::kOtip);
  EXPECT_NO_THROW(c.Validate(lava));
  c.planner.horizon = 10;
  EXPECT_THROW(c.Validate(lava), InvalidArgument);
  c = DefaultAgentConfig(lava, Algorithm::kOtip);
  c.k = 0;
  EXPECT_THROW(c.Validate(lava), InvalidArgument);
}

TEST(FirstArgminTest, TiesGoToFirstIndex) {
  Vector v(5);
  v << 3.0, 1.0, 2.0, 1.0, 1.0;
  EXPECT_EQ(FirstArgmin(v), 1);
  EXPECT_EQ(FirstArgmin(Vector::Constant(4, 7.0)), 0);
  EXPECT_EQ(FirstArgmin(Vector::Constant(1, -2.0)), 0);
  EXPECT_THROW(FirstArgmin(Vector(0)), InvalidArgument);
}

TEST(BudgetTest, OnePendulumEpisodeIsTwoHundredTransitions) {
  env::Pendulum env;
  AgentConfig c = SmallConfig(env, Algorithm::kMpcGroundTruth, env.horizon());
  c.eval_every = env.horizon();
  const RunTranscript t = agent::Run(env, c, 0);
  EXPECT_FALSE(t.aborted) << t.error;
  ASSERT_EQ(t.transitions(), 200);
  for (int i = 0; i < t.transitions(); ++i) {
    EXPECT_EQ(t.steps[i].dataset_size, i + 1);
    if (i > 0) EXPECT_EQ(t.steps[i].state, t.steps[i - 1].next_state);
  }
  ASSERT_EQ(t.evals.size(), 1u);
  EXPECT_EQ(t.evals[0].transitions, 200);
  EXPECT_EQ(t.step_seconds.size(), 200u);
}

TEST(BudgetTest, OneLavaTrialIsTwentyTransitions) {
  env::LavaPath env;
  const AgentConfig c = SmallConfig(env, Algorithm::kOmpc, env.horizon());
  const RunTranscript t = agent::Run(env, c, 1);
  EXPECT_FALSE(t.aborted) << t.error;
  ASSERT_EQ(t.transitions(), 20);
  EXPECT_EQ(t.steps[0].state, env.Reset(0));
  ASSERT_EQ(t.evals.size(), 1u);
  EXPECT_EQ(t.evals[0].transitions, 20);
}

TEST(BudgetTest, TqrlQueriesOnePointPerRound) {
  env::NonlinearGain env(1);
  AgentConfig c = SmallConfig(env, Algorithm::kEigT, 12);
  c.eval_every = 6;
  const RunTranscript t = agent::Run(env, c, 2);
  EXPECT_FALSE(t.aborted) << t.error;
  ASSERT_EQ(t.transitions(), 12);
  ASSERT_EQ(t.evals.size(), 2u);
  for (const StepRecord& s : t.steps) {
    EXPECT_EQ(s.next_state, env.Query(s.state, s.action));
  }
}

TEST(EvaluationTest, GroundTruthControllerReproducesAcrossCalls) {
  env::NonlinearGain env(2);
  const planner::PlannerConfig cfg = DefaultPlannerConfig(env);
  const EvalResult a = EvaluatePolicy(nullptr, env, cfg, 5, 1, 512, 0, 12345);
  const EvalResult b = EvaluatePolicy(nullptr, env, cfg, 5, 1, 512, 9, 12345);
  ASSERT_EQ(a.returns.size(), 5u);
  EXPECT_EQ(a.returns, b.returns);
  double mean = 0.0;
  for (double r : a.returns) mean += r / 5.0;
  EXPECT_DOUBLE_EQ(a.mean_return, mean);
  EXPECT_EQ(a.planned_points.size(), 5u);
}

TEST(EvaluationTest, EvaluationDoesNotPerturbTheRun) {
  env::NonlinearGain env(1);
  AgentConfig one = SmallConfig(env, Algorithm::kOmpc, 30);
  AgentConfig three = one;
  three.eval_episodes = 3;
  const RunTranscript a = agent::Run(env, one, 3);
  const RunTranscript b = agent::Run(env, three, 3);
  ExpectSameSteps(a, b);
  ASSERT_EQ(b.evals.size(), 3u);
  for (const EvalRecord& e : b.evals) EXPECT_EQ(e.returns.size(), 3u);
}

TEST(RunTest, SeedDeterminism) {
  env::NonlinearGain env(1);
  const AgentConfig c = SmallConfig(env, Algorithm::kOtip, 20);
  const RunTranscript a = agent::Run(env, c, 4);
  const RunTranscript b = agent::Run(env, c, 4);
  const RunTranscript other = agent::Run(env, c, 5);
  EXPECT_FALSE(a.aborted) << a.error;
  ExpectSameSteps(a, b);
  ASSERT_EQ(a.evals.size(), b.evals.size());
  for (size_t i = 0; i < a.evals.size(); ++i) {
    EXPECT_EQ(a.evals[i].returns, b.evals[i].returns);
    EXPECT_EQ(a.evals[i].planner_mse, b.evals[i].planner_mse);
  }
  EXPECT_NE(a.steps[0].action, other.steps[0].action);
}

TEST(RunTest, StopOnSolveEndsAtFirstSolvingEvaluation) {
  env::NonlinearGain env(1);
  AgentConfig c = SmallConfig(env, Algorithm::kOmpc, 100);
  c.stop_on_solve = true;
  c.solve_threshold = -1e9;
  const RunTranscript t = agent::Run(env, c, 6);
  EXPECT_EQ(t.transitions(), env.horizon());
  EXPECT_EQ(t.evals.size(), 1u);
}

TEST(RunTest, ModeMismatchThrows) {
  env::Pendulum env;
  const AgentConfig c = DefaultAgentConfig(env, Algorithm::kTip);
  EXPECT_THROW(RunOpenLoop(env, c, 0), InvalidArgument);
  EXPECT_THROW(RunTqrl(env, c, 0), InvalidArgument);
}

TEST(ModelErrorTest, InterpolatingPosteriorHasTinyPlannerError) {
  env::NonlinearGain env(1);
  gp::TransitionDataset data(2, 2);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 40; ++i) {
    const Vector s = env.SampleState(rng);
    const Vector a = env.SampleAction(rng);
    data.Append(s, a, env.Step(s, a));
  }
  std::vector<gp::KernelHyperparams> hs(2);
  for (auto& h : hs) {
    h.lengthscales = Vector::Constant(4, 1.0);
    h.signal_variance = 1.0;
    h.noise_variance = 1e-8;
  }
  const gp::GpPosterior post(data, hs);
  const ModelErrors e = ModelErrorDiagnostics(
      post, env, {data.Inputs()}, UniformTestSet(env, 100, 1));
  EXPECT_LT(e.planner_mse, 1e-4);
  EXPECT_GE(e.planner_mse, 0.0);
  EXPECT_GT(e.uniform_mse, e.planner_mse);
}

TEST(ModelErrorTest, EmptyPosteriorErrorIsMeanSquaredDelta) {
  env::NonlinearGain env(2);
  std::vector<gp::KernelHyperparams> hs(2);
  for (auto& h : hs) h.lengthscales = Vector::Ones(4);
  const gp::GpPosterior post(gp::TransitionDataset(2, 2), hs);
  const Matrix test = UniformTestSet(env, 200, 3);
  double expected = 0.0;
  for (Eigen::Index i = 0; i < test.cols(); ++i) {
    const Vector s = test.col(i).head(2);
    const Vector a = test.col(i).tail(2);
    expected += (env.Step(s, a) - s).squaredNorm();
  }
  expected /= 2.0 * test.cols();
  const ModelErrors e = ModelErrorDiagnostics(post, env, {}, test);
  EXPECT_EQ(e.planner_mse, 0.0);
  EXPECT_NEAR(e.uniform_mse, expected, 1e-12 * expected);
}

}  // namespace
}  // namespace tip::agent
