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

#ifndef TIP_PLANNER_ICEM_H_
#define TIP_PLANNER_ICEM_H_

#include <cstdint>
#include <functional>
#include <vector>

#include "tip/common.h"

namespace tip::planner {

struct PlannerConfig {
  int population = 25;
  int elites = 3;
  int horizon = 20;
  int iterations = 3;
  double noise_exponent = 3.0;
  double population_decay = 1.25;
  double elite_cache_fraction = 0.3;
  int replan_period = 1;
  bool fixed_batch = true;
  Vector action_low;
  Vector action_high;

  // Weight of the previous sampling distribution in the update.
  double momentum = 0.1;
  // Initial standard deviation as a fraction of the action range.
  double init_std_fraction = 0.25;
  // Variance floor as a fraction of the squared action range.
  double variance_floor = 1e-4;

  int action_dim() const { return static_cast<int>(action_low.size()); }
  // Number of elites carried to the next iteration / replan.
  int CachedElites() const;
  // Throws InvalidArgument on violated invariants (e < p, h <= H when
  // `env_horizon` > 0, gamma >= 1, 0 <= xi < 1, ...).
  void Validate(int env_horizon = 0) const;
};

// Action sequences are action_dim x horizon matrices.
using ActionSequence = Matrix;
using CostEvaluator =
    std::function<std::vector<double>(const std::vector<ActionSequence>&)>;

// Power-law (1/f^beta) Gaussian noise, `count` sequences of shape
// dims x horizon, normalized to unit expected marginal variance. Frequency
// domain synthesis; horizon must be >= 2.
std::vector<Matrix> ColoredNoise(double exponent, int horizon, int dims,
                                 int count, uint64_t seed);

struct IcemWarmStart {
  ActionSequence mean;                 // empty: midpoint of the bounds
  std::vector<ActionSequence> elites;  // injected into the first iteration
};

struct IcemResult {
  ActionSequence best_actions;
  double best_cost = 0.0;
  ActionSequence mean;                 // final sampling mean
  std::vector<ActionSequence> elites;  // final elites, best first
  int nan_count = 0;
  std::vector<double> best_cost_per_iteration;  // best seen so far
  std::vector<int> batch_sizes;
};

// Improved cross-entropy method over action sequences: colored-noise
// sampling around a mean, elite refitting with momentum, population decay,
// elite caching across iterations, and the sampling mean injected in the
// last iteration. With fixed_batch every call to `evaluate` sees exactly
// `population` candidates. Non-finite costs count as +inf; an all-NaN batch
// throws NumericalError.
IcemResult IcemOptimize(const CostEvaluator& evaluate,
                        const PlannerConfig& config,
                        const IcemWarmStart& warm_start, uint64_t seed);

// Warm start for the next plan after executing `steps` actions: mean and
// cached elites shifted forward, tails padded with their final action.
IcemWarmStart ShiftWarmStart(const IcemResult& result, int steps,
                             const PlannerConfig& config);

ActionSequence MidpointSequence(const PlannerConfig& config);

}  // namespace tip::planner

#endif  // TIP_PLANNER_ICEM_H_
