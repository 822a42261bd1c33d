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

// Command-line experiment runner.
//
//   tip_cli run --env pendulum --algo tip --seeds 0..4 --budget 200 --out runs
//   tip_cli threshold --env lava_path
//   tip_cli report --out runs
//   tip_cli print-config --env cartpole --algo mpc

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tip/harness/experiment.h"

namespace {

using tip::harness::ExperimentConfig;

// Accepts "a..b" (inclusive) or a comma separated list.
std::vector<uint64_t> ParseSeeds(const std::string& text) {
  std::vector<uint64_t> seeds;
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    const uint64_t lo = std::stoull(text.substr(0, dots));
    const uint64_t hi = std::stoull(text.substr(dots + 2));
    if (hi < lo) throw tip::InvalidArgument("empty seed range " + text);
    for (uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
    return seeds;
  }
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) seeds.push_back(std::stoull(item));
  }
  if (seeds.empty()) throw tip::InvalidArgument("no seeds in '" + text + "'");
  return seeds;
}

struct CommonOptions {
  std::string env;
  std::string algo;
  std::string config;
};

ExperimentConfig BuildConfig(const CommonOptions& o) {
  if (!o.config.empty()) {
    return tip::harness::LoadExperimentConfig(o.config, o.env, o.algo);
  }
  return tip::harness::DefaultExperimentConfig(
      o.env.empty() ? "pendulum" : o.env, o.algo.empty() ? "tip" : o.algo);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trajectory information planning experiments"};
  app.require_subcommand(1);

  CommonOptions run_opts;
  std::string seeds_text;
  int budget = -1;
  std::string out_dir;
  double solve_slack = -1.0;
  bool stop_on_solve = false;
  bool no_plots = false;
  auto* run = app.add_subcommand("run", "Run a multi-seed experiment");
  run->add_option("--env", run_opts.env, "Environment name");
  run->add_option("--algo", run_opts.algo, "Algorithm name");
  run->add_option("--seeds", seeds_text, "Seeds, e.g. 0..4 or 1,3,5");
  run->add_option("--budget", budget, "True-environment transitions per seed");
  run->add_option("--out", out_dir, "Output directory");
  run->add_option("--solve-slack", solve_slack, "Solve slack in (0, 1]");
  run->add_option("--config", run_opts.config, "YAML config file");
  run->add_flag("--stop-on-solve", stop_on_solve,
                "Stop each seed once it solves");
  run->add_flag("--no-plots", no_plots, "Skip the SVG plot");

  std::string threshold_env;
  std::string threshold_config;
  auto* threshold = app.add_subcommand("threshold", "Print the solve threshold");
  threshold->add_option("--env", threshold_env, "Environment name")->required();
  threshold->add_option("--config", threshold_config, "YAML config file");

  std::string report_dir;
  auto* report = app.add_subcommand("report", "Rebuild the report of a run");
  report->add_option("--out", report_dir, "Output directory")->required();

  CommonOptions print_opts;
  auto* print = app.add_subcommand("print-config", "Print the full config");
  print->add_option("--env", print_opts.env, "Environment name");
  print->add_option("--algo", print_opts.algo, "Algorithm name");
  print->add_option("--config", print_opts.config, "YAML config file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      ExperimentConfig config = BuildConfig(run_opts);
      if (!seeds_text.empty()) config.seeds = ParseSeeds(seeds_text);
      if (budget >= 0) config.budget = budget;
      if (!out_dir.empty()) config.out_dir = out_dir;
      if (solve_slack >= 0.0) config.solve_slack = solve_slack;
      if (stop_on_solve) config.stop_on_solve = true;
      if (no_plots) config.plots = false;
      config.agent.budget = config.budget;
      const auto r = tip::harness::RunExperiment(config);
      std::printf("%s %s threshold %.6g (effective %.6g)\n", r.env.c_str(),
                  r.algorithm.c_str(), r.threshold, r.effective_threshold);
      for (const auto& s : r.seeds) {
        std::string status = s.solved_at < 0
                                 ? "unsolved after " + std::to_string(s.transitions)
                                 : "solved at " + std::to_string(s.solved_at);
        if (s.crashed) status += " [failed: " + s.error + "]";
        std::printf("  seed %llu: %s\n",
                    static_cast<unsigned long long>(s.seed), status.c_str());
      }
      std::printf("median transitions to solve: %s\n", r.median_text.c_str());
    } else if (*threshold) {
      ExperimentConfig config =
          threshold_config.empty()
              ? tip::harness::DefaultExperimentConfig(threshold_env, "mpc")
              : BuildConfig({threshold_env, "mpc", threshold_config});
      const auto env = tip::env::MakeEnvironment(config.env);
      const double value = tip::harness::ComputeSolveThreshold(
          *env, config.agent.planner, config.agent.eval_episodes,
          config.agent.eval_seed);
      std::printf("%.17g\n", value);
    } else if (*report) {
      const auto r = tip::harness::RebuildReport(report_dir);
      std::cout << tip::harness::ReportJson(r);
    } else if (*print) {
      std::cout << tip::harness::DumpConfigYaml(BuildConfig(print_opts));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
