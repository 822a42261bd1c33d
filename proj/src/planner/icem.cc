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

#include "tip/planner/icem.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace tip::planner {

int PlannerConfig::CachedElites() const {
  return static_cast<int>(std::ceil(elite_cache_fraction * elites - 1e-12));
}

void PlannerConfig::Validate(int env_horizon) const {
  std::ostringstream err;
  if (population < 1) err << "population must be positive; ";
  if (elites < 1 || elites >= population) err << "need 1 <= elites < population; ";
  if (horizon < 1) err << "horizon must be positive; ";
  if (env_horizon > 0 && horizon > env_horizon) err << "horizon exceeds episode length; ";
  if (iterations < 1) err << "iterations must be positive; ";
  if (population_decay < 1.0) err << "population_decay must be >= 1; ";
  if (elite_cache_fraction < 0.0 || elite_cache_fraction >= 1.0) {
    err << "elite_cache_fraction must be in [0, 1); ";
  }
  if (replan_period < 1) err << "replan_period must be positive; ";
  if (action_low.size() == 0 || action_low.size() != action_high.size() ||
      (action_high - action_low).minCoeff() <= 0.0) {
    err << "invalid action bounds; ";
  }
  if (momentum < 0.0 || momentum >= 1.0) err << "momentum must be in [0, 1); ";
  if (fixed_batch && CachedElites() >= population) {
    err << "cached elites fill the whole batch; ";
  }
  if (!err.str().empty()) throw InvalidArgument("PlannerConfig: " + err.str());
}

ActionSequence MidpointSequence(const PlannerConfig& config) {
  const Vector mid = 0.5 * (config.action_low + config.action_high);
  return mid.replicate(1, config.horizon);
}

namespace {

ActionSequence Clip(const ActionSequence& a, const PlannerConfig& config) {
  return a.cwiseMax(config.action_low.replicate(1, a.cols()))
      .cwiseMin(config.action_high.replicate(1, a.cols()));
}

ActionSequence ShiftSequence(const ActionSequence& a, int steps) {
  const int h = static_cast<int>(a.cols());
  ActionSequence out(a.rows(), h);
  for (int t = 0; t < h; ++t) out.col(t) = a.col(std::min(t + steps, h - 1));
  return out;
}

}  // namespace

IcemResult IcemOptimize(const CostEvaluator& evaluate,
                        const PlannerConfig& config,
                        const IcemWarmStart& warm_start, uint64_t seed) {
  config.Validate();
  const int dims = config.action_dim();
  const int h = config.horizon;
  const Vector range = config.action_high - config.action_low;
  const Matrix range_h = range.replicate(1, h);
  const Matrix var_floor =
      (config.variance_floor * range.array().square()).matrix().replicate(1, h);

  ActionSequence mean =
      warm_start.mean.size() > 0 ? warm_start.mean : MidpointSequence(config);
  if (mean.rows() != dims || mean.cols() != h) {
    throw InvalidArgument("IcemOptimize: warm-start mean has wrong shape");
  }
  Matrix variance =
      (config.init_std_fraction * range_h).array().square().matrix();

  std::vector<ActionSequence> cached;
  for (const auto& e : warm_start.elites) {
    if (static_cast<int>(cached.size()) >= config.CachedElites()) break;
    cached.push_back(Clip(e, config));
  }

  IcemResult result;
  result.best_cost = std::numeric_limits<double>::infinity();
  bool have_best = false;

  for (int it = 0; it < config.iterations; ++it) {
    const int decayed = std::max(
        static_cast<int>(std::ceil(config.population *
                                   std::pow(config.population_decay, -it))),
        2 * config.elites);
    const int pop = std::min(decayed, config.population);
    const int cached_count = static_cast<int>(cached.size());
    const int fresh_count =
        config.fixed_batch ? config.population - cached_count : pop;

    const std::vector<Matrix> noise =
        ColoredNoise(config.noise_exponent, std::max(h, 2), dims, fresh_count,
                     DeriveSeed(seed, static_cast<uint64_t>(it)));
    const Matrix stddev = variance.cwiseSqrt();

    std::vector<ActionSequence> candidates;
    candidates.reserve(cached_count + fresh_count);
    for (auto& c : cached) candidates.push_back(std::move(c));
    for (int i = 0; i < fresh_count; ++i) {
      candidates.push_back(Clip(
          mean + stddev.cwiseProduct(noise[i].leftCols(h)), config));
    }
    if (it == config.iterations - 1 && fresh_count > 0) {
      candidates.back() = Clip(mean, config);
    }

    std::vector<double> costs = evaluate(candidates);
    if (costs.size() != candidates.size()) {
      throw InvalidArgument("IcemOptimize: evaluator returned wrong batch size");
    }
    int nan_here = 0;
    for (double& c : costs) {
      if (!std::isfinite(c)) {
        if (std::isnan(c)) ++nan_here;
        c = std::numeric_limits<double>::infinity();
      }
    }
    result.nan_count += nan_here;
    if (nan_here == static_cast<int>(costs.size())) {
      throw NumericalError("IcemOptimize: every candidate cost is NaN");
    }
    result.batch_sizes.push_back(static_cast<int>(candidates.size()));

    std::vector<int> order(candidates.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return costs[a] < costs[b]; });
    const int num_elites =
        std::min(config.elites, static_cast<int>(candidates.size()));

    if (!have_best || costs[order[0]] < result.best_cost) {
      result.best_cost = costs[order[0]];
      result.best_actions = candidates[order[0]];
      have_best = true;
    }
    result.best_cost_per_iteration.push_back(result.best_cost);

    Matrix elite_mean = Matrix::Zero(dims, h);
    for (int e = 0; e < num_elites; ++e) elite_mean += candidates[order[e]];
    elite_mean /= num_elites;
    Matrix elite_var = Matrix::Zero(dims, h);
    for (int e = 0; e < num_elites; ++e) {
      elite_var +=
          (candidates[order[e]] - elite_mean).array().square().matrix();
    }
    elite_var /= num_elites;

    mean = (1.0 - config.momentum) * elite_mean + config.momentum * mean;
    variance = ((1.0 - config.momentum) * elite_var +
                config.momentum * variance)
                   .cwiseMax(var_floor);

    result.elites.clear();
    for (int e = 0; e < num_elites; ++e) {
      result.elites.push_back(candidates[order[e]]);
    }
    cached.assign(result.elites.begin(),
                  result.elites.begin() +
                      std::min(config.CachedElites(), num_elites));
  }
  result.mean = mean;
  return result;
}

IcemWarmStart ShiftWarmStart(const IcemResult& result, int steps,
                             const PlannerConfig& config) {
  IcemWarmStart warm;
  warm.mean = ShiftSequence(result.mean, steps);
  for (int e = 0; e < std::min(config.CachedElites(),
                               static_cast<int>(result.elites.size()));
       ++e) {
    warm.elites.push_back(ShiftSequence(result.elites[e], steps));
  }
  return warm;
}

}  // namespace tip::planner
