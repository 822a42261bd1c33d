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
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "tip/agent/agent.h"
#include "tip/env/benchmarks.h"
#include "tip/harness/experiment.h"

namespace tip::harness {
namespace {

namespace fs = std::filesystem;

std::string Slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path FreshDir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("tip_harness_" + name);
  fs::remove_all(dir);
  return dir;
}

// Ground-truth MPC on Nonlinear Gain 1, two seeds, two evaluations each.
ExperimentConfig OracleConfig(const fs::path& out) {
  ExperimentConfig c = DefaultExperimentConfig("nonlinear_gain_1", "mpc_groundtruth");
  c.seeds = {0, 1};
  c.budget = 20;
  c.out_dir = out;
  return c;
}

TEST(MedianTest, UnsolvedSeedsAreImputedPastTheBudget) {
  EXPECT_EQ(MedianTransitions({40, 60, -1, -1, -1}, 200), 201.0);
  EXPECT_EQ(FormatMedian(MedianTransitions({40, 60, -1, -1, -1}, 200), 200), ">200");
  EXPECT_EQ(MedianTransitions({40, 60, 80, -1, -1}, 200), 80.0);
  EXPECT_EQ(MedianTransitions({40, 60}, 200), 50.0);
  EXPECT_EQ(FormatMedian(50.0, 200), "50");
  EXPECT_EQ(FormatMedian(200.0, 200), "200");
}

TEST(SolveRuleTest, SlackAndFirstCrossing) {
  EXPECT_DOUBLE_EQ(EffectiveThreshold(-400.0, 1.0), -400.0);
  EXPECT_DOUBLE_EQ(EffectiveThreshold(-400.0, 0.95), -420.0);
  EXPECT_DOUBLE_EQ(EffectiveThreshold(10.0, 0.9), 9.0);
  agent::RunTranscript t;
  for (int i = 1; i <= 4; ++i) {
    agent::EvalRecord e;
    e.transitions = 10 * i;
    e.mean_return = i == 1 ? -500.0 : -390.0 - i;
    t.evals.push_back(e);
  }
  EXPECT_EQ(TransitionsToSolve(t, -400.0), 20);
  EXPECT_EQ(TransitionsToSolve(t, -100.0), -1);
}

TEST(CsvTest, LearningCurveRoundTripsExactly) {
  std::vector<agent::EvalRecord> evals(3);
  for (int i = 0; i < 3; ++i) {
    evals[i].transitions = 5 * (i + 1);
    evals[i].returns = {-1.0 / 3.0 * i, std::exp(1.0) * i, -1e-17 * i};
    evals[i].mean_return = (evals[i].returns[0] + evals[i].returns[1] +
                            evals[i].returns[2]) / 3.0;
    evals[i].planner_mse = 0.1 + i;
    evals[i].uniform_mse = std::sqrt(2.0) * i;
  }
  uint64_t seed = 0;
  const auto back = ParseLearningCurveCsv(LearningCurveCsv(17, evals), &seed);
  EXPECT_EQ(seed, 17u);
  ASSERT_EQ(back.size(), evals.size());
  for (size_t i = 0; i < evals.size(); ++i) {
    EXPECT_EQ(back[i].transitions, evals[i].transitions);
    EXPECT_EQ(back[i].mean_return, evals[i].mean_return);
    EXPECT_EQ(back[i].returns, evals[i].returns);
    EXPECT_EQ(back[i].planner_mse, evals[i].planner_mse);
    EXPECT_EQ(back[i].uniform_mse, evals[i].uniform_mse);
  }
}

TEST(ReportTest, JsonRoundTrip) {
  SampleComplexityReport r;
  r.env = "pendulum";
  r.algorithm = "tip";
  r.budget = 200;
  r.eval_every = 5;
  r.threshold = -379.9;
  r.solve_slack = 0.95;
  r.effective_threshold = EffectiveThreshold(r.threshold, r.solve_slack);
  r.seeds.resize(2);
  r.seeds[0].seed = 3;
  r.seeds[0].solved_at = 45;
  r.seeds[1].seed = 4;
  r.seeds[1].crashed = true;
  r.seeds[1].error = "boom";
  r.seeds[1].warnings = {"w"};
  r.median = 123.0;
  r.median_text = "123";
  const std::string text = ReportJson(r);
  EXPECT_EQ(ReportJson(ParseReportJson(text)), text);
}

TEST(ConfigTest, YamlRoundTripAndOverrides) {
  ExperimentConfig c = DefaultExperimentConfig("cartpole", "dip");
  c.seeds = {3, 7};
  c.budget = 123;
  c.solve_slack = 0.9;
  c.agent.planner.population = 40;
  c.agent.eval_every = 7;
  const std::string yaml = DumpConfigYaml(c);
  const ExperimentConfig back =
      ApplyConfigYaml(yaml, DefaultExperimentConfig("pendulum", "tip"));
  EXPECT_EQ(DumpConfigYaml(back), yaml);
  EXPECT_EQ(back.agent.planner.population, 40);
  EXPECT_EQ(back.agent.planner.elites, 6);

  const ExperimentConfig partial = ApplyConfigYaml(
      "env: lava_path\nalgorithm: otip\nagent:\n  k: 3\n",
      DefaultExperimentConfig("pendulum", "tip"));
  EXPECT_EQ(partial.agent.k, 3);
  EXPECT_EQ(partial.agent.planner.horizon, 20);
  EXPECT_EQ(partial.agent.planner.replan_period, 20);
  EXPECT_NO_THROW(ValidateExperimentConfig(partial));
}

TEST(ConfigTest, RejectsUnknownKeysAndBadValues) {
  const ExperimentConfig base = DefaultExperimentConfig("pendulum", "tip");
  EXPECT_THROW(ApplyConfigYaml("bugdet: 10\n", base), InvalidArgument);
  EXPECT_THROW(ApplyConfigYaml("agent:\n  kk: 1\n", base), InvalidArgument);
  EXPECT_THROW(ApplyConfigYaml("planner:\n  pop: 1\n", base), InvalidArgument);
  ExperimentConfig c = base;
  c.seeds = {1, 1};
  EXPECT_THROW(ValidateExperimentConfig(c), InvalidArgument);
  c = base;
  c.solve_slack = 0.0;
  EXPECT_THROW(ValidateExperimentConfig(c), InvalidArgument);
  c = base;
  c.env = "reacher";
  EXPECT_THROW(ValidateExperimentConfig(c), InvalidArgument);
  c = DefaultExperimentConfig("pendulum", "otip");
  EXPECT_THROW(ValidateExperimentConfig(c), InvalidArgument);
}

TEST(ThresholdTest, CachedAndReproducible) {
  env::NonlinearGain env(2);
  const auto cfg = agent::DefaultPlannerConfig(env);
  const double a = ComputeSolveThreshold(env, cfg, 5, 12345);
  EXPECT_EQ(a, ComputeSolveThreshold(env, cfg, 5, 12345));
  EXPECT_EQ(a, agent::EvaluatePolicy(nullptr, env, cfg, 5, 1, 512, 0, 12345)
                   .mean_return);
}

TEST(ThresholdTest, PendulumControllerBeatsDoingNothing) {
  env::Pendulum env;
  const auto cfg = agent::DefaultPlannerConfig(env);
  const double threshold = ComputeSolveThreshold(env, cfg, 5, 12345);
  double idle = 0.0;
  for (int e = 0; e < 5; ++e) {
    std::vector<Vector> zeros(env.horizon(), Vector::Zero(1));
    double ret = 0.0;
    env.Rollout(env.Reset(DeriveSeed(12345, e)), zeros, &ret);
    idle += ret / 5.0;
  }
  EXPECT_GT(threshold, idle);
}

TEST(ThresholdTest, LavaControllerAvoidsLava) {
  env::LavaPath env;
  const auto cfg = agent::DefaultPlannerConfig(env);
  const agent::EvalResult r =
      agent::EvaluatePolicy(nullptr, env, cfg, 5, 1, 512, 0, 12345);
  EXPECT_GT(r.mean_return, -env::LavaPath::kLavaPenalty);
  // One plan per episode, executed in full: the planned points are the
  // visited states.
  for (const Matrix& points : r.planned_points) {
    for (Eigen::Index i = 0; i < points.cols(); ++i) {
      EXPECT_FALSE(env::LavaPath::InLava(points.col(i).head(env.state_dim())));
    }
  }
}

TEST(ExperimentTest, GroundTruthSolvesAtFirstEvaluation) {
  const ExperimentConfig c = OracleConfig(FreshDir("oracle"));
  const SampleComplexityReport r = RunExperiment(c);
  ASSERT_EQ(r.seeds.size(), 2u);
  for (const SeedOutcome& s : r.seeds) {
    EXPECT_FALSE(s.crashed) << s.error;
    EXPECT_EQ(s.solved_at, r.eval_every);
  }
  EXPECT_EQ(r.median, r.eval_every);
  for (const char* name :
       {"config.yaml", "report.json", "diagnostics.csv", "learning_curves.svg",
        "learning_curve_seed0.csv", "transcript_seed1.csv", "timing_seed0.csv"}) {
    EXPECT_TRUE(fs::exists(c.out_dir / name)) << name;
  }
}

TEST(ExperimentTest, RerunIsByteIdentical) {
  const fs::path dir = FreshDir("rerun");
  RunExperiment(OracleConfig(dir));
  const std::string report = Slurp(dir / "report.json");
  const std::string curve = Slurp(dir / "learning_curve_seed1.csv");
  const std::string transcript = Slurp(dir / "transcript_seed0.csv");
  RunExperiment(OracleConfig(dir));
  EXPECT_EQ(Slurp(dir / "report.json"), report);
  EXPECT_EQ(Slurp(dir / "learning_curve_seed1.csv"), curve);
  EXPECT_EQ(Slurp(dir / "transcript_seed0.csv"), transcript);
  // The report can be rebuilt from the files alone.
  RebuildReport(dir);
  EXPECT_EQ(Slurp(dir / "report.json"), report);
}

TEST(ExperimentTest, MissingSeedCountsAsCrashedAndUnsolved) {
  const fs::path dir = FreshDir("crash");
  ExperimentConfig c = OracleConfig(dir);
  c.seeds = {0, 1, 2};
  RunExperiment(c);
  fs::remove(dir / "learning_curve_seed1.csv");
  fs::remove(dir / "learning_curve_seed2.csv");
  const SampleComplexityReport r = RebuildReport(dir);
  ASSERT_EQ(r.seeds.size(), 3u);
  EXPECT_FALSE(r.seeds[0].crashed);
  EXPECT_TRUE(r.seeds[1].crashed);
  EXPECT_EQ(r.seeds[1].solved_at, -1);
  EXPECT_EQ(r.median_text, ">20");
  EXPECT_EQ(ParseReportJson(Slurp(dir / "report.json")).seeds[2].crashed, true);
}

}  // namespace
}  // namespace tip::harness
