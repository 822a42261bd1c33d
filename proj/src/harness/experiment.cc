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

#include "tip/harness/experiment.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>
#include <yaml-cpp/yaml.h>

#include "tip/gp/function_sample.h"

namespace tip::harness {

namespace fs = std::filesystem;

namespace {

std::string FormatDouble(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void WriteFile(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write " + path.string());
  out << text;
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void CheckKeys(const YAML::Node& node, const std::set<std::string>& allowed,
               const std::string& where) {
  for (const auto& kv : node) {
    const std::string key = kv.first.as<std::string>();
    if (!allowed.count(key)) {
      throw InvalidArgument("unknown config key '" + where + key + "'");
    }
  }
}

template <typename T>
void Read(const YAML::Node& node, const char* key, T* value) {
  if (node[key]) *value = node[key].as<T>();
}

}  // namespace

ExperimentConfig DefaultExperimentConfig(const std::string& env_name,
                                         const std::string& algorithm) {
  const auto env = env::MakeEnvironment(env_name);
  ExperimentConfig config;
  config.env = env_name;
  config.algorithm = algorithm;
  config.agent =
      agent::DefaultAgentConfig(*env, agent::ParseAlgorithm(algorithm));
  config.agent.budget = config.budget;
  return config;
}

ExperimentConfig ApplyConfigYaml(const std::string& yaml,
                                 const ExperimentConfig& base) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml);
  } catch (const YAML::Exception& e) {
    throw InvalidArgument(std::string("config parse error: ") + e.what());
  }
  if (root.IsNull()) return base;
  if (!root.IsMap()) throw InvalidArgument("config must be a mapping");
  CheckKeys(root,
            {"env", "algorithm", "seeds", "budget", "out_dir", "solve_slack",
             "stop_on_solve", "plots", "agent", "planner"},
            "");

  ExperimentConfig config = base;
  try {
    std::string env_name = base.env;
    std::string algorithm = base.algorithm;
    Read(root, "env", &env_name);
    Read(root, "algorithm", &algorithm);
    if (env_name != base.env || algorithm != base.algorithm) {
      const ExperimentConfig fresh =
          DefaultExperimentConfig(env_name, algorithm);
      config.env = fresh.env;
      config.algorithm = fresh.algorithm;
      config.agent = fresh.agent;
    }
    Read(root, "seeds", &config.seeds);
    Read(root, "budget", &config.budget);
    if (root["out_dir"]) config.out_dir = root["out_dir"].as<std::string>();
    Read(root, "solve_slack", &config.solve_slack);
    Read(root, "stop_on_solve", &config.stop_on_solve);
    Read(root, "plots", &config.plots);

    if (const YAML::Node a = root["agent"]) {
      CheckKeys(a,
                {"k", "m", "n", "eval_episodes", "eval_every", "refit_every",
                 "fit_restarts", "fit_iterations", "num_features",
                 "tqrl_candidates", "test_points", "eval_seed"},
                "agent.");
      agent::AgentConfig& ag = config.agent;
      Read(a, "k", &ag.k);
      Read(a, "m", &ag.m);
      Read(a, "n", &ag.n);
      Read(a, "eval_episodes", &ag.eval_episodes);
      Read(a, "eval_every", &ag.eval_every);
      Read(a, "refit_every", &ag.refit_every);
      Read(a, "fit_restarts", &ag.fit_restarts);
      Read(a, "fit_iterations", &ag.fit_iterations);
      Read(a, "num_features", &ag.num_features);
      Read(a, "tqrl_candidates", &ag.tqrl_candidates);
      Read(a, "test_points", &ag.test_points);
      Read(a, "eval_seed", &ag.eval_seed);
    }
    if (const YAML::Node p = root["planner"]) {
      CheckKeys(p,
                {"population", "elites", "horizon", "iterations",
                 "noise_exponent", "population_decay", "elite_cache_fraction",
                 "replan_period", "fixed_batch", "momentum",
                 "init_std_fraction", "variance_floor"},
                "planner.");
      planner::PlannerConfig& pc = config.agent.planner;
      Read(p, "population", &pc.population);
      Read(p, "elites", &pc.elites);
      Read(p, "horizon", &pc.horizon);
      Read(p, "iterations", &pc.iterations);
      Read(p, "noise_exponent", &pc.noise_exponent);
      Read(p, "population_decay", &pc.population_decay);
      Read(p, "elite_cache_fraction", &pc.elite_cache_fraction);
      Read(p, "replan_period", &pc.replan_period);
      Read(p, "fixed_batch", &pc.fixed_batch);
      Read(p, "momentum", &pc.momentum);
      Read(p, "init_std_fraction", &pc.init_std_fraction);
      Read(p, "variance_floor", &pc.variance_floor);
    }
  } catch (const YAML::Exception& e) {
    throw InvalidArgument(std::string("config value error: ") + e.what());
  }
  config.agent.budget = config.budget;
  return config;
}

ExperimentConfig LoadExperimentConfig(const fs::path& path,
                                      const std::string& env,
                                      const std::string& algorithm) {
  YAML::Node root;
  try {
    root = YAML::Load(ReadFile(path));
  } catch (const YAML::Exception& e) {
    throw InvalidArgument(std::string("config parse error: ") + e.what());
  }
  if (root.IsNull()) root = YAML::Node(YAML::NodeType::Map);
  if (!root.IsMap()) throw InvalidArgument("config must be a mapping");
  if (!env.empty()) root["env"] = env;
  if (!algorithm.empty()) root["algorithm"] = algorithm;
  const std::string env_name =
      root["env"] ? root["env"].as<std::string>() : "pendulum";
  const std::string algo_name =
      root["algorithm"] ? root["algorithm"].as<std::string>() : "tip";
  YAML::Emitter out;
  out << root;
  return ApplyConfigYaml(out.c_str(),
                         DefaultExperimentConfig(env_name, algo_name));
}

namespace {

// Shortest decimal text that parses back to the same double.
std::string Shortest(double value) {
  char buf[32];
  const auto result = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, result.ptr);
}

}  // namespace

std::string DumpConfigYaml(const ExperimentConfig& config) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "env" << YAML::Value << config.env;
  out << YAML::Key << "algorithm" << YAML::Value << config.algorithm;
  out << YAML::Key << "seeds" << YAML::Value << YAML::Flow << config.seeds;
  out << YAML::Key << "budget" << YAML::Value << config.budget;
  out << YAML::Key << "out_dir" << YAML::Value << config.out_dir.string();
  out << YAML::Key << "solve_slack" << YAML::Value << Shortest(config.solve_slack);
  out << YAML::Key << "stop_on_solve" << YAML::Value << config.stop_on_solve;
  out << YAML::Key << "plots" << YAML::Value << config.plots;

  const agent::AgentConfig& a = config.agent;
  out << YAML::Key << "agent" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "k" << YAML::Value << a.k;
  out << YAML::Key << "m" << YAML::Value << a.m;
  out << YAML::Key << "n" << YAML::Value << a.n;
  out << YAML::Key << "eval_episodes" << YAML::Value << a.eval_episodes;
  out << YAML::Key << "eval_every" << YAML::Value << a.eval_every;
  out << YAML::Key << "refit_every" << YAML::Value << a.refit_every;
  out << YAML::Key << "fit_restarts" << YAML::Value << a.fit_restarts;
  out << YAML::Key << "fit_iterations" << YAML::Value << a.fit_iterations;
  out << YAML::Key << "num_features" << YAML::Value << a.num_features;
  out << YAML::Key << "tqrl_candidates" << YAML::Value << a.tqrl_candidates;
  out << YAML::Key << "test_points" << YAML::Value << a.test_points;
  out << YAML::Key << "eval_seed" << YAML::Value << a.eval_seed;
  out << YAML::EndMap;

  const planner::PlannerConfig& p = a.planner;
  out << YAML::Key << "planner" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "population" << YAML::Value << p.population;
  out << YAML::Key << "elites" << YAML::Value << p.elites;
  out << YAML::Key << "horizon" << YAML::Value << p.horizon;
  out << YAML::Key << "iterations" << YAML::Value << p.iterations;
  out << YAML::Key << "noise_exponent" << YAML::Value << Shortest(p.noise_exponent);
  out << YAML::Key << "population_decay" << YAML::Value << Shortest(p.population_decay);
  out << YAML::Key << "elite_cache_fraction" << YAML::Value
      << Shortest(p.elite_cache_fraction);
  out << YAML::Key << "replan_period" << YAML::Value << p.replan_period;
  out << YAML::Key << "fixed_batch" << YAML::Value << p.fixed_batch;
  out << YAML::Key << "momentum" << YAML::Value << Shortest(p.momentum);
  out << YAML::Key << "init_std_fraction" << YAML::Value
      << Shortest(p.init_std_fraction);
  out << YAML::Key << "variance_floor" << YAML::Value << Shortest(p.variance_floor);
  out << YAML::EndMap;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

void ValidateExperimentConfig(const ExperimentConfig& config) {
  const auto& envs = env::EnvironmentNames();
  if (std::find(envs.begin(), envs.end(), config.env) == envs.end()) {
    throw InvalidArgument("unknown environment '" + config.env + "'");
  }
  const agent::Algorithm algorithm = agent::ParseAlgorithm(config.algorithm);
  if (config.agent.algorithm != algorithm) {
    throw InvalidArgument("agent settings were built for another algorithm");
  }
  if (config.seeds.empty()) throw InvalidArgument("no seeds given");
  std::set<uint64_t> unique(config.seeds.begin(), config.seeds.end());
  if (unique.size() != config.seeds.size()) {
    throw InvalidArgument("duplicate seeds");
  }
  if (config.budget < 1) throw InvalidArgument("budget must be >= 1");
  if (!(config.solve_slack > 0.0 && config.solve_slack <= 1.0)) {
    throw InvalidArgument("solve_slack must be in (0, 1]");
  }
  const auto env = env::MakeEnvironment(config.env);
  agent::AgentConfig check = config.agent;
  check.budget = config.budget;
  check.Validate(*env);
}

double ComputeSolveThreshold(const env::Environment& env,
                             const planner::PlannerConfig& config,
                             int episodes, uint64_t eval_seed) {
  static std::mutex mutex;
  static std::map<std::string, double> cache;
  std::ostringstream key;
  key << env.name() << '|' << config.population << '|' << config.elites
      << '|' << config.horizon << '|' << config.iterations << '|'
      << FormatDouble(config.noise_exponent) << '|'
      << FormatDouble(config.population_decay) << '|'
      << FormatDouble(config.elite_cache_fraction) << '|'
      << config.replan_period << '|' << config.fixed_batch << '|'
      << FormatDouble(config.momentum) << '|'
      << FormatDouble(config.init_std_fraction) << '|'
      << FormatDouble(config.variance_floor) << '|' << episodes << '|'
      << eval_seed;
  {
    std::lock_guard<std::mutex> lock(mutex);
    const auto it = cache.find(key.str());
    if (it != cache.end()) return it->second;
  }
  const double value =
      agent::EvaluatePolicy(nullptr, env, config, episodes, 1,
                            gp::kDefaultNumFeatures, 0, eval_seed)
          .mean_return;
  std::lock_guard<std::mutex> lock(mutex);
  cache.emplace(key.str(), value);
  return value;
}

double EffectiveThreshold(double threshold, double solve_slack) {
  return threshold - (1.0 - solve_slack) * std::abs(threshold);
}

int TransitionsToSolve(const agent::RunTranscript& transcript,
                       double threshold) {
  for (const auto& e : transcript.evals) {
    if (e.mean_return >= threshold) return e.transitions;
  }
  return -1;
}

double MedianTransitions(const std::vector<int>& solved_at, int budget) {
  if (solved_at.empty()) return budget + 1.0;
  std::vector<double> v;
  for (int s : solved_at) v.push_back(s < 0 ? budget + 1.0 : s);
  std::sort(v.begin(), v.end());
  const size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::string FormatMedian(double median, int budget) {
  if (median > budget) return ">" + std::to_string(budget);
  std::ostringstream out;
  out << median;
  return out.str();
}

std::string ReportJson(const SampleComplexityReport& report) {
  nlohmann::ordered_json j;
  j["env"] = report.env;
  j["algorithm"] = report.algorithm;
  j["budget"] = report.budget;
  j["eval_every"] = report.eval_every;
  j["threshold"] = report.threshold;
  j["solve_slack"] = report.solve_slack;
  j["effective_threshold"] = report.effective_threshold;
  j["median"] = report.median;
  j["median_text"] = report.median_text;
  nlohmann::ordered_json seeds = nlohmann::ordered_json::array();
  for (const auto& s : report.seeds) {
    nlohmann::ordered_json o;
    o["seed"] = s.seed;
    o["solved_at"] = s.solved_at;
    o["transitions"] = s.transitions;
    o["crashed"] = s.crashed;
    o["error"] = s.error;
    o["warnings"] = s.warnings;
    seeds.push_back(o);
  }
  j["seeds"] = seeds;
  return j.dump(2) + "\n";
}

SampleComplexityReport ParseReportJson(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  SampleComplexityReport r;
  r.env = j.at("env").get<std::string>();
  r.algorithm = j.at("algorithm").get<std::string>();
  r.budget = j.at("budget").get<int>();
  r.eval_every = j.at("eval_every").get<int>();
  r.threshold = j.at("threshold").get<double>();
  r.solve_slack = j.at("solve_slack").get<double>();
  r.effective_threshold = j.at("effective_threshold").get<double>();
  r.median = j.at("median").get<double>();
  r.median_text = j.at("median_text").get<std::string>();
  for (const auto& o : j.at("seeds")) {
    SeedOutcome s;
    s.seed = o.at("seed").get<uint64_t>();
    s.solved_at = o.at("solved_at").get<int>();
    s.transitions = o.at("transitions").get<int>();
    s.crashed = o.at("crashed").get<bool>();
    s.error = o.at("error").get<std::string>();
    s.warnings = o.at("warnings").get<std::vector<std::string>>();
    r.seeds.push_back(std::move(s));
  }
  return r;
}

std::string LearningCurveCsv(uint64_t seed,
                             const std::vector<agent::EvalRecord>& evals) {
  size_t episodes = 0;
  for (const auto& e : evals) episodes = std::max(episodes, e.returns.size());
  std::ostringstream out;
  out << "seed,transitions,mean_return";
  for (size_t i = 0; i < episodes; ++i) out << ",return_" << i;
  out << ",planner_mse,uniform_mse\n";
  for (const auto& e : evals) {
    if (e.returns.size() != episodes) {
      throw InvalidArgument("LearningCurveCsv: ragged evaluation records");
    }
    out << seed << ',' << e.transitions << ',' << FormatDouble(e.mean_return);
    for (double r : e.returns) out << ',' << FormatDouble(r);
    out << ',' << FormatDouble(e.planner_mse) << ','
        << FormatDouble(e.uniform_mse) << '\n';
  }
  return out.str();
}

std::vector<agent::EvalRecord> ParseLearningCurveCsv(const std::string& csv,
                                                     uint64_t* seed) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line)) throw InvalidArgument("empty learning curve");
  int columns = 1 + static_cast<int>(std::count(line.begin(), line.end(), ','));
  const int episodes = columns - 5;
  if (episodes < 0 || line.rfind("seed,transitions,mean_return", 0) != 0) {
    throw InvalidArgument("learning curve header malformed");
  }
  std::vector<agent::EvalRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::istringstream row(line);
    std::string cell;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    if (static_cast<int>(cells.size()) != columns) {
      throw InvalidArgument("learning curve row has wrong column count");
    }
    if (seed != nullptr) *seed = std::stoull(cells[0]);
    agent::EvalRecord e;
    e.transitions = std::stoi(cells[1]);
    e.mean_return = std::strtod(cells[2].c_str(), nullptr);
    for (int i = 0; i < episodes; ++i) {
      e.returns.push_back(std::strtod(cells[3 + i].c_str(), nullptr));
    }
    e.planner_mse = std::strtod(cells[3 + episodes].c_str(), nullptr);
    e.uniform_mse = std::strtod(cells[4 + episodes].c_str(), nullptr);
    out.push_back(std::move(e));
  }
  return out;
}

std::string TranscriptCsv(const agent::RunTranscript& t) {
  std::ostringstream out;
  out << "step,dataset_size,state,action,next_state,plan_cost\n";
  auto vec = [](const Vector& v) {
    std::string s;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      if (i > 0) s += ' ';
      s += FormatDouble(v(i));
    }
    return s;
  };
  for (size_t i = 0; i < t.steps.size(); ++i) {
    const auto& s = t.steps[i];
    out << i << ',' << s.dataset_size << ',' << vec(s.state) << ','
        << vec(s.action) << ',' << vec(s.next_state) << ','
        << FormatDouble(s.plan_cost) << '\n';
  }
  return out.str();
}

std::string LearningCurveSvg(
    const std::vector<std::pair<uint64_t, std::vector<agent::EvalRecord>>>&
        curves,
    double threshold, const std::string& title) {
  constexpr double kW = 640, kH = 400, kLeft = 70, kRight = 20, kTop = 40,
                   kBottom = 50;
  double xmax = 1, ymin = threshold, ymax = threshold;
  for (const auto& [seed, evals] : curves) {
    for (const auto& e : evals) {
      xmax = std::max(xmax, static_cast<double>(e.transitions));
      ymin = std::min(ymin, e.mean_return);
      ymax = std::max(ymax, e.mean_return);
    }
  }
  if (ymax - ymin < 1e-9) {
    ymin -= 1;
    ymax += 1;
  }
  const double pad = 0.05 * (ymax - ymin);
  ymin -= pad;
  ymax += pad;
  auto px = [&](double x) { return kLeft + x / xmax * (kW - kLeft - kRight); };
  auto py = [&](double y) {
    return kTop + (ymax - y) / (ymax - ymin) * (kH - kTop - kBottom);
  };
  static const char* kColors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                  "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};
  char buf[256];
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW
      << "\" height=\"" << kH << "\" font-family=\"sans-serif\" "
      << "font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kW / 2 << "\" y=\"22\" text-anchor=\"middle\">"
      << title << "</text>\n";
  std::snprintf(buf, sizeof(buf),
                "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" "
                "stroke=\"black\"/>\n",
                kLeft, kH - kBottom, kW - kRight, kH - kBottom);
  out << buf;
  std::snprintf(buf, sizeof(buf),
                "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" "
                "stroke=\"black\"/>\n",
                kLeft, kTop, kLeft, kH - kBottom);
  out << buf;
  for (int i = 0; i <= 4; ++i) {
    const double xv = xmax * i / 4.0;
    const double yv = ymin + (ymax - ymin) * i / 4.0;
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\">%.0f"
                  "</text>\n<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"end\">"
                  "%.4g</text>\n",
                  px(xv), kH - kBottom + 18, xv, kLeft - 6, py(yv) + 4, yv);
    out << buf;
  }
  std::snprintf(buf, sizeof(buf),
                "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\">"
                "transitions</text>\n",
                (kLeft + kW - kRight) / 2, kH - 12);
  out << buf;
  std::snprintf(buf, sizeof(buf),
                "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" "
                "stroke=\"gray\" stroke-dasharray=\"6,4\"/>\n",
                kLeft, py(threshold), kW - kRight, py(threshold));
  out << buf;
  for (size_t c = 0; c < curves.size(); ++c) {
    const auto& [seed, evals] = curves[c];
    const char* color = kColors[c % 8];
    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"";
    for (size_t i = 0; i < evals.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%s%.1f,%.1f", i ? " " : "",
                    px(evals[i].transitions), py(evals[i].mean_return));
      out << buf;
    }
    out << "\"/>\n";
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%.1f\" y=\"%.1f\" fill=\"%s\">seed %llu</text>\n",
                  kW - kRight - 70, kTop + 14.0 * (c + 1), color,
                  static_cast<unsigned long long>(seed));
    out << buf;
  }
  out << "</svg>\n";
  return out.str();
}

int WorkerLimit() {
  if (const char* env = std::getenv("TIP_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

std::string SeedFile(const char* stem, uint64_t seed, const char* ext) {
  return std::string(stem) + "_seed" + std::to_string(seed) + ext;
}

SampleComplexityReport Assemble(
    const ExperimentConfig& config, double threshold,
    const std::vector<SeedOutcome>& outcomes) {
  const auto env = env::MakeEnvironment(config.env);
  SampleComplexityReport report;
  report.env = config.env;
  report.algorithm = config.algorithm;
  report.budget = config.budget;
  report.eval_every = config.agent.EffectiveEvalEvery(*env);
  report.threshold = threshold;
  report.solve_slack = config.solve_slack;
  report.effective_threshold = EffectiveThreshold(threshold, config.solve_slack);
  report.seeds = outcomes;
  std::vector<int> solved;
  for (const auto& s : outcomes) solved.push_back(s.solved_at);
  report.median = MedianTransitions(solved, config.budget);
  report.median_text = FormatMedian(report.median, config.budget);
  return report;
}

void WriteAggregates(
    const ExperimentConfig& config, const SampleComplexityReport& report,
    const std::vector<std::pair<uint64_t, std::vector<agent::EvalRecord>>>&
        curves) {
  std::ostringstream diag;
  diag << "seed,transitions,planner_mse,uniform_mse\n";
  for (const auto& [seed, evals] : curves) {
    for (const auto& e : evals) {
      diag << seed << ',' << e.transitions << ',' << FormatDouble(e.planner_mse)
           << ',' << FormatDouble(e.uniform_mse) << '\n';
    }
  }
  WriteFile(config.out_dir / "diagnostics.csv", diag.str());
  WriteFile(config.out_dir / "report.json", ReportJson(report));
  if (config.plots) {
    WriteFile(config.out_dir / "learning_curves.svg",
              LearningCurveSvg(curves, report.effective_threshold,
                               config.env + " / " + config.algorithm));
  }
}

}  // namespace

SampleComplexityReport RunExperiment(const ExperimentConfig& config) {
  ValidateExperimentConfig(config);
  fs::create_directories(config.out_dir);
  WriteFile(config.out_dir / "config.yaml", DumpConfigYaml(config));

  const auto env = env::MakeEnvironment(config.env);
  const double threshold =
      ComputeSolveThreshold(*env, config.agent.planner,
                            config.agent.eval_episodes, config.agent.eval_seed);
  const double effective = EffectiveThreshold(threshold, config.solve_slack);

  agent::AgentConfig agent_config = config.agent;
  agent_config.budget = config.budget;
  agent_config.stop_on_solve = config.stop_on_solve;
  agent_config.solve_threshold = effective;

  const int count = static_cast<int>(config.seeds.size());
  std::vector<agent::RunTranscript> transcripts(count);
  std::vector<SeedOutcome> outcomes(count);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < count; i = next++) {
      SeedOutcome& out = outcomes[i];
      out.seed = config.seeds[i];
      try {
        transcripts[i] = agent::Run(*env, agent_config, config.seeds[i]);
        out.solved_at = TransitionsToSolve(transcripts[i], effective);
        out.transitions = transcripts[i].transitions();
        out.warnings = transcripts[i].warnings;
        if (transcripts[i].aborted) {
          out.crashed = true;
          out.error = transcripts[i].error;
        }
      } catch (const std::exception& e) {
        out.crashed = true;
        out.error = e.what();
        out.solved_at = -1;
      }
    }
  };
  const int workers = std::min(WorkerLimit(), count);
  std::vector<std::thread> threads;
  for (int w = 1; w < workers; ++w) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();

  std::vector<std::pair<uint64_t, std::vector<agent::EvalRecord>>> curves;
  for (int i = 0; i < count; ++i) {
    const uint64_t seed = config.seeds[i];
    WriteFile(config.out_dir / SeedFile("learning_curve", seed, ".csv"),
              LearningCurveCsv(seed, transcripts[i].evals));
    WriteFile(config.out_dir / SeedFile("transcript", seed, ".csv"),
              TranscriptCsv(transcripts[i]));
    std::ostringstream timing;
    timing << "step,seconds\n";
    for (size_t s = 0; s < transcripts[i].step_seconds.size(); ++s) {
      timing << s << ',' << transcripts[i].step_seconds[s] << '\n';
    }
    WriteFile(config.out_dir / SeedFile("timing", seed, ".csv"), timing.str());
    curves.emplace_back(seed, transcripts[i].evals);
  }
  const SampleComplexityReport report = Assemble(config, threshold, outcomes);
  WriteAggregates(config, report, curves);
  return report;
}

SampleComplexityReport RebuildReport(const fs::path& out_dir) {
  ExperimentConfig config = LoadExperimentConfig(out_dir / "config.yaml");
  config.out_dir = out_dir;
  const auto env = env::MakeEnvironment(config.env);
  const double threshold =
      ComputeSolveThreshold(*env, config.agent.planner,
                            config.agent.eval_episodes, config.agent.eval_seed);
  const double effective = EffectiveThreshold(threshold, config.solve_slack);

  std::map<uint64_t, SeedOutcome> previous;
  if (fs::exists(out_dir / "report.json")) {
    for (auto& s : ParseReportJson(ReadFile(out_dir / "report.json")).seeds) {
      previous[s.seed] = s;
    }
  }
  std::vector<SeedOutcome> outcomes;
  std::vector<std::pair<uint64_t, std::vector<agent::EvalRecord>>> curves;
  for (uint64_t seed : config.seeds) {
    SeedOutcome out;
    if (previous.count(seed)) out = previous[seed];
    out.seed = seed;
    const fs::path path = out_dir / SeedFile("learning_curve", seed, ".csv");
    std::vector<agent::EvalRecord> evals;
    if (fs::exists(path)) {
      evals = ParseLearningCurveCsv(ReadFile(path));
      agent::RunTranscript t;
      t.evals = evals;
      out.solved_at = TransitionsToSolve(t, effective);
    } else {
      out.crashed = true;
      out.solved_at = -1;
      out.error = "missing " + path.filename().string();
    }
    outcomes.push_back(out);
    curves.emplace_back(seed, std::move(evals));
  }
  const SampleComplexityReport report = Assemble(config, threshold, outcomes);
  WriteAggregates(config, report, curves);
  return report;
}

}  // namespace tip::harness
