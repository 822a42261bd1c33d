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

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "oracles.h"
#include "tip/agent/agent.h"
#include "tip/cost/costs.h"
#include "tip/env/benchmarks.h"
#include "tip/gp/function_sample.h"
#include "tip/gp/gp_posterior.h"
#include "tip/harness/experiment.h"
#include "tip/planner/icem.h"

namespace tip {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Fmt(const char* format, double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, value);
  return buf;
}

std::string Slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// ---------------------------------------------------------------- 1

Outcome GpOracleEquivalence() {
  std::mt19937_64 rng(1001);
  std::uniform_int_distribution<int> size(1, 6), dims(1, 4), queries(1, 5);
  double worst_mean = 0.0, worst_cov = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = size(rng), d = dims(rng), q = queries(rng);
    const Matrix x = oracle::RandomMatrix(rng, d, n, -2.0, 2.0);
    const Matrix y = oracle::RandomMatrix(rng, 1, n, -2.0, 2.0);
    const gp::KernelHyperparams h = oracle::RandomHyperparams(rng, d);
    const Matrix query = oracle::RandomMatrix(rng, d, q, -2.5, 2.5);
    const gp::GpPosterior post(x, y, {h});
    const gp::JointPrediction got = post.PredictJoint(query);
    const oracle::Prediction want = oracle::Posterior(
        x, y.row(0).transpose(), Vector::Constant(n, h.noise_variance), h,
        query);
    worst_mean = std::max(worst_mean, (got.mean[0] - want.mean).cwiseAbs().maxCoeff());
    worst_cov = std::max(
        worst_cov, (got.covariance[0] - want.covariance).cwiseAbs().maxCoeff());
  }
  return {worst_mean <= 1e-8 && worst_cov <= 1e-7,
          "200 datasets, max |mean err| " + Fmt("%.2e", worst_mean) +
              " (tol 1e-8), max |cov err| " + Fmt("%.2e", worst_cov) +
              " (tol 1e-7)"};
}

// ---------------------------------------------------------------- 2

Outcome PosteriorSamplingStatistics() {
  Matrix x(1, 5), y(1, 5);
  x << -1.6, -0.7, 0.0, 0.9, 1.7;
  y << 0.4, -0.3, 0.8, 0.1, -0.6;
  gp::KernelHyperparams h;
  h.lengthscales = Vector::Constant(1, 0.6);
  h.signal_variance = 1.2;
  h.noise_variance = 0.02;
  const gp::GpPosterior post(x, y, {h});
  Matrix query(1, 10);
  for (int i = 0; i < 10; ++i) query(0, i) = -2.25 + 0.5 * i;
  const oracle::Prediction want = oracle::Posterior(
      x, y.row(0).transpose(), Vector::Constant(5, h.noise_variance), h, query);

  constexpr int kSamples = 2000;
  Matrix values(kSamples, 10);
  for (int s = 0; s < kSamples; ++s) {
    values.row(s) = gp::SamplePosteriorFunction(post, gp::kDefaultNumFeatures,
                                                static_cast<uint64_t>(s))
                        .Evaluate(query)
                        .row(0);
  }
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    // Latent function: no observation noise on the target variance.
    const double var = want.covariance(i, i) - h.noise_variance;
    const double mean = values.col(i).mean();
    const double svar =
        (values.col(i).array() - mean).square().sum() / (kSamples - 1);
    const double se_mean = std::sqrt(var / kSamples);
    const double se_var = var * std::sqrt(2.0 / (kSamples - 1));
    worst = std::max({worst, std::abs(mean - want.mean(i)) / se_mean,
                      std::abs(svar - var) / se_var});
  }
  return {worst <= 3.0, "2000 samples at 10 inputs, worst deviation " +
                            Fmt("%.2f", worst) + " SE (tol 3)"};
}

// ---------------------------------------------------------------- 3, 4

gp::GpPosterior RandomPosterior(std::mt19937_64& rng, int input_dim,
                                int outputs, int points, uint64_t snapshot) {
  std::vector<gp::KernelHyperparams> hs;
  for (int d = 0; d < outputs; ++d) {
    hs.push_back(oracle::RandomHyperparams(rng, input_dim));
  }
  return gp::GpPosterior(oracle::RandomMatrix(rng, input_dim, points),
                         oracle::RandomMatrix(rng, outputs, points), hs,
                         snapshot);
}

cost::OptimalTrajectorySamples RandomSamples(std::mt19937_64& rng,
                                             int state_dim, int action_dim,
                                             int cells, int length,
                                             uint64_t snapshot) {
  cost::OptimalTrajectorySamples s;
  s.snapshot = snapshot;
  s.m = 1;
  s.n = cells;
  for (int c = 0; c < cells; ++c) {
    const Matrix states = oracle::RandomMatrix(rng, state_dim, length + 1);
    const Matrix actions = oracle::RandomMatrix(rng, action_dim, length);
    Trajectory t;
    for (int i = 0; i <= length; ++i) t.states.push_back(states.col(i));
    for (int i = 0; i < length; ++i) t.actions.push_back(actions.col(i));
    s.trajectories.push_back(std::move(t));
  }
  return s;
}

Outcome NonPositivityAndOrdering() {
  std::mt19937_64 rng(3003);
  int non_positive = 0, ordered = 0;
  double worst_excess = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int points = trial % 2 == 0 ? 0 : 10;
    const gp::GpPosterior post = RandomPosterior(rng, 3, 2, points, 7);
    const auto samples = RandomSamples(rng, 2, 1, 4, 5, 7);
    const Matrix x = oracle::RandomMatrix(rng, 3, 4);
    const double joint = cost::TipCost(x, post, samples);
    const double summed = cost::TipCostSummed(x, post, samples);
    if (joint <= 1e-8) ++non_positive;
    if (summed <= joint + 1e-8) {
      ++ordered;
    } else {
      worst_excess = std::max(worst_excess, summed - joint);
    }
  }
  return {non_positive == 100 && ordered == 100,
          "tip_cost <= 1e-8 in " + std::to_string(non_positive) +
              "/100, tip_cost_summed <= tip_cost + 1e-8 in " +
              std::to_string(ordered) + "/100 (worst excess " +
              Fmt("%.3g", worst_excess) + ")"};
}

Outcome SingletonReduction() {
  std::mt19937_64 rng(4004);
  double worst_tip = 0.0, worst_explore = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const gp::GpPosterior post = RandomPosterior(rng, 3, 2, trial % 12, 9);
    const auto samples = RandomSamples(rng, 2, 1, 3, 4, 9);
    const Matrix x = oracle::RandomMatrix(rng, 3, 1, -1.5, 1.5);
    worst_tip = std::max(worst_tip, std::abs(cost::TipCost(x, post, samples) -
                                             cost::TipCostSummed(x, post, samples)));
    worst_explore = std::max(
        worst_explore, std::abs(cost::ExploreCostJoint(x, post) -
                                cost::ExploreCostSummed(x, post)));
  }
  return {worst_tip <= 1e-10 && worst_explore <= 1e-10,
          "100 cases, max |tip - tip_summed| " + Fmt("%.2e", worst_tip) +
              ", max |explore_joint - explore_summed| " +
              Fmt("%.2e", worst_explore) + " (tol 1e-10)"};
}

// ---------------------------------------------------------------- 5

Outcome IcemCorrectness() {
  env::Pendulum pendulum;
  const planner::PlannerConfig config = agent::DefaultPlannerConfig(pendulum);
  std::mt19937_64 rng(5005);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  double worst = 0.0, total = 0.0;
  constexpr int kTrials = 20;
  for (int trial = 0; trial < kTrials; ++trial) {
    Matrix target(config.action_dim(), config.horizon);
    for (Eigen::Index i = 0; i < target.size(); ++i) target(i) = u(rng);
    const planner::CostEvaluator quadratic =
        [&target](const std::vector<planner::ActionSequence>& batch) {
          std::vector<double> out;
          for (const auto& a : batch) out.push_back((a - target).squaredNorm());
          return out;
        };
    const planner::IcemResult r =
        planner::IcemOptimize(quadratic, config, {}, 100 + trial);
    const double err = (r.best_actions - target).cwiseAbs().maxCoeff();
    worst = std::max(worst, err);
    total += err / kTrials;
  }
  const double slope = oracle::LogLogSlope(
      oracle::MeanPsd(planner::ColoredNoise(3.0, 64, 1, 10000, 5006)));
  const bool quad_ok = worst <= 0.05;
  const bool slope_ok = std::abs(slope + 3.0) <= 0.3;
  return {quad_ok && slope_ok,
          "quadratic optimum (pendulum planner " +
              std::to_string(config.population) + "/" +
              std::to_string(config.elites) + "/" +
              std::to_string(config.horizon) + "/" +
              std::to_string(config.iterations) + ", " +
              std::to_string(kTrials) + " targets): worst coord err " +
              Fmt("%.3f", worst) + ", mean " + Fmt("%.3f", total) +
              " (tol 0.05) " + (quad_ok ? "ok" : "FAIL") +
              "; spectral slope " + Fmt("%.3f", slope) + " (-3 +/- 0.3) " +
              (slope_ok ? "ok" : "FAIL")};
}

// ---------------------------------------------------------------- 6

Outcome OracleSolvability(const fs::path& work) {
  int solved = 0;
  std::string detail;
  for (const std::string& name : env::EnvironmentNames()) {
    harness::ExperimentConfig c =
        harness::DefaultExperimentConfig(name, "mpc_groundtruth");
    const auto env = env::MakeEnvironment(name);
    c.seeds = {0};
    c.budget = c.agent.EffectiveEvalEvery(*env);
    c.out_dir = work / ("c6_" + name);
    c.plots = false;
    const harness::SampleComplexityReport r = harness::RunExperiment(c);
    const bool ok = !r.seeds[0].crashed && r.seeds[0].solved_at > 0;
    solved += ok;
    detail += name + " threshold " + Fmt("%.4g", r.threshold) +
              (ok ? " solved" : " NOT solved") + "; ";
  }
  return {solved == 5, std::to_string(solved) + "/5 environments: " + detail};
}

// ---------------------------------------------------------------- 7-10

harness::SampleComplexityReport RunPendulum(const fs::path& work,
                                            const std::string& algorithm) {
  harness::ExperimentConfig c =
      harness::DefaultExperimentConfig("pendulum", algorithm);
  c.seeds = {0, 1, 2, 3, 4};
  c.budget = 200;
  c.solve_slack = 0.95;
  c.stop_on_solve = true;
  c.out_dir = work / ("pendulum_" + algorithm);
  return harness::RunExperiment(c);
}

harness::SampleComplexityReport RunLava(const fs::path& work,
                                        const std::string& algorithm) {
  harness::ExperimentConfig c =
      harness::DefaultExperimentConfig("lava_path", algorithm);
  c.seeds = {0, 1, 2, 3, 4};
  c.budget = 200;
  c.stop_on_solve = true;
  c.out_dir = work / ("lava_" + algorithm);
  return harness::RunExperiment(c);
}

std::string Summary(const harness::SampleComplexityReport& r) {
  std::string s = r.algorithm + " median " + r.median_text + " [";
  for (size_t i = 0; i < r.seeds.size(); ++i) {
    if (i) s += " ";
    s += r.seeds[i].crashed ? "crash"
         : r.seeds[i].solved_at < 0 ? ">" + std::to_string(r.budget)
                                    : std::to_string(r.seeds[i].solved_at);
  }
  return s + "]";
}

bool Crashed(const harness::SampleComplexityReport& r) {
  for (const auto& s : r.seeds) {
    if (s.crashed) return true;
  }
  return false;
}

Outcome PlannerVisitedError(const fs::path& work,
                            const harness::SampleComplexityReport& tip) {
  int solved = 0, below = 0;
  double planner_sum = 0.0, uniform_sum = 0.0;
  for (const auto& s : tip.seeds) {
    if (s.solved_at < 0) continue;
    const auto evals = harness::ParseLearningCurveCsv(Slurp(
        work / "pendulum_tip" /
        ("learning_curve_seed" + std::to_string(s.seed) + ".csv")));
    for (const auto& e : evals) {
      if (e.transitions != s.solved_at) continue;
      ++solved;
      below += e.planner_mse <= e.uniform_mse;
      planner_sum += e.planner_mse;
      uniform_sum += e.uniform_mse;
    }
  }
  if (solved == 0) return {false, "no solved TIP seed to inspect"};
  const double planner = planner_sum / solved, uniform = uniform_sum / solved;
  return {planner <= uniform,
          "TIP pendulum at solve time, mean planner-visited MSE " +
              Fmt("%.3g", planner) + " vs uniform MSE " + Fmt("%.3g", uniform) +
              " (" + std::to_string(below) + "/" + std::to_string(solved) +
              " solved seeds individually below)"};
}

// ---------------------------------------------------------------- 11

Outcome Determinism(const fs::path& work) {
  harness::ExperimentConfig c = harness::DefaultExperimentConfig("pendulum", "tip");
  c.seeds = {3};
  c.budget = 12;
  c.agent.eval_every = 6;
  c.agent.eval_episodes = 2;
  const std::vector<std::string> files = {
      "report.json", "transcript_seed3.csv", "learning_curve_seed3.csv",
      "diagnostics.csv", "config.yaml", "learning_curves.svg"};
  c.out_dir = work / "c11_a";
  harness::RunExperiment(c);
  c.out_dir = work / "c11_b";
  harness::RunExperiment(c);
  int same = 0;
  std::string diff;
  for (const auto& f : files) {
    std::string a = Slurp(work / "c11_a" / f), b = Slurp(work / "c11_b" / f);
    if (f == "config.yaml") {
      // The output directory is the one field that legitimately differs.
      const auto strip = [](std::string s) {
        std::istringstream in(s);
        std::string line, out;
        while (std::getline(in, line)) {
          if (line.rfind("out_dir:", 0) != 0) out += line + "\n";
        }
        return out;
      };
      a = strip(a);
      b = strip(b);
    }
    if (!a.empty() && a == b) {
      ++same;
    } else {
      diff += " " + f;
    }
  }
  return {same == static_cast<int>(files.size()),
          "pendulum tip seed 3, 12 transitions, run twice: " +
              std::to_string(same) + "/" + std::to_string(files.size()) +
              " output files byte-identical" +
              (diff.empty() ? "" : " (differs:" + diff + ")")};
}

}  // namespace
}  // namespace tip

int main(int argc, char** argv) {
  using namespace tip;
  CLI::App app{"Acceptance checks"};
  std::string work_dir = "acceptance_runs";
  std::vector<int> only;
  app.add_option("--work-dir", work_dir, "Directory for experiment outputs");
  app.add_option("--only", only, "Criteria to run (default: all)")
      ->delimiter(',');
  CLI11_PARSE(app, argc, argv);
  const fs::path work = fs::absolute(work_dir);
  fs::create_directories(work);
  const std::set<int> selected(only.begin(), only.end());
  const auto wanted = [&](int id) {
    return selected.empty() || selected.count(id) > 0;
  };

  int failures = 0;
  const auto report = [&](int id, const std::string& title, double limit_s,
                          const std::function<Outcome()>& check) {
    if (!wanted(id)) return;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    std::string timing = Fmt("%.1f s", secs);
    if (limit_s > 0) {
      timing += " of " + Fmt("%.0f s", limit_s) + " allowed";
      if (secs > limit_s) {
        o.pass = false;
        timing += ", OVER";
      }
    }
    failures += !o.pass;
    std::printf("[%s] %2d %s: %s (%s)\n", o.pass ? "PASS" : "FAIL", id,
                title.c_str(), o.detail.c_str(), timing.c_str());
    std::fflush(stdout);
  };

  report(1, "GP oracle equivalence", 60, GpOracleEquivalence);
  report(2, "posterior sampling statistics", 120, PosteriorSamplingStatistics);
  report(3, "EIG non-positivity and summed ordering", 300,
         NonPositivityAndOrdering);
  report(4, "singleton reduction", 0, SingletonReduction);
  report(5, "iCEM correctness", 0, IcemCorrectness);
  report(6, "oracle solvability", 600, [&] { return OracleSolvability(work); });

  // 7, 8 and 10 share the TIP pendulum runs.
  harness::SampleComplexityReport tip;
  bool have_tip = false;
  const auto tip_runs = [&] {
    if (!have_tip) {
      tip = RunPendulum(work, "tip");
      have_tip = true;
    }
    return tip;
  };
  report(7, "pendulum sample complexity", 7200, [&] {
    const auto r = tip_runs();
    return Outcome{!Crashed(r) && r.median <= 60.0,
                   Summary(r) + ", need median <= 60 at slack 0.95"};
  });
  report(8, "pendulum ordering", 4 * 3600, [&] {
    const auto t = tip_runs();
    const auto mpc = RunPendulum(work, "mpc");
    const auto sdip = RunPendulum(work, "sdip");
    const bool ok = !Crashed(t) && !Crashed(mpc) && !Crashed(sdip) &&
                    t.median <= mpc.median && t.median <= sdip.median;
    return Outcome{ok, Summary(t) + "; " + Summary(mpc) + "; " + Summary(sdip)};
  });
  report(9, "open-loop lava path", 3600, [&] {
    const auto otip = RunLava(work, "otip");
    const auto ompc = RunLava(work, "ompc");
    const bool ok = !Crashed(otip) && !Crashed(ompc) && otip.median <= 120.0 &&
                    otip.median <= ompc.median;
    return Outcome{ok, Summary(otip) + "; " + Summary(ompc) +
                           ", need otip <= 120 and <= ompc"};
  });
  report(10, "planner-visited vs uniform model error", 0,
         [&] { return PlannerVisitedError(work, tip_runs()); });
  report(11, "determinism", 0, [&] { return Determinism(work); });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
