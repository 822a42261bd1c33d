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

#ifndef TIP_ENV_ENVIRONMENT_H_
#define TIP_ENV_ENVIRONMENT_H_

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "tip/common.h"

namespace tip::env {

struct EnvSpec {
  std::string name;
  int state_dim = 0;
  int action_dim = 0;
  int horizon = 0;
  Vector action_low;
  Vector action_high;
  std::vector<int> periodic_dims;
  bool fixed_start = false;
};

// A deterministic finite-horizon MDP with a known reward. Step and Query are
// the same transition function; Query exists for the transition-query
// setting, where the dynamics may be probed at arbitrary points.
//
// Implementations are immutable and safe to share across threads.
class Environment {
 public:
  explicit Environment(EnvSpec spec) : spec_(std::move(spec)) {}
  virtual ~Environment() = default;

  const EnvSpec& spec() const { return spec_; }
  const std::string& name() const { return spec_.name; }
  int state_dim() const { return spec_.state_dim; }
  int action_dim() const { return spec_.action_dim; }
  int horizon() const { return spec_.horizon; }

  // Start state drawn from p0; deterministic in the seed.
  virtual Vector Reset(uint64_t seed) const = 0;

  // Clips the action to bounds and integrates one step. Throws
  // InvalidArgument on a NaN state or action, or on a dimension mismatch.
  Vector Step(const Vector& state, const Vector& action) const;
  Vector Query(const Vector& state, const Vector& action) const {
    return Step(state, action);
  }
  // Column-batch version of Step.
  Matrix StepBatch(const Matrix& states, const Matrix& actions) const;

  virtual double Reward(const Vector& state, const Vector& action,
                        const Vector& next_state) const = 0;

  Vector ClipAction(const Vector& action) const;

  // Uniform samples over the region of state/action space of interest;
  // used for query candidates and model test sets.
  virtual Vector SampleState(std::mt19937_64& rng) const = 0;
  Vector SampleAction(std::mt19937_64& rng) const;

  // Extent of each model input (state ++ action) dimension.
  virtual Vector InputRange() const = 0;

  // State where the task is solved and which the null action keeps fixed.
  virtual Vector GoalState() const = 0;

  // Executes `actions` from `start`, returning the trajectory and its return.
  Trajectory Rollout(const Vector& start, const std::vector<Vector>& actions,
                     double* total_return = nullptr) const;

 protected:
  // Transition for an in-bounds action.
  virtual Vector Dynamics(const Vector& state, const Vector& action) const = 0;

 private:
  EnvSpec spec_;
};

// Sum of rewards along a trajectory.
double TrajectoryReturn(const Environment& env, const Trajectory& trajectory);

// Known names: pendulum, cartpole, lava_path, nonlinear_gain_1,
// nonlinear_gain_2. Throws InvalidArgument for anything else.
std::unique_ptr<Environment> MakeEnvironment(std::string_view name);
const std::vector<std::string>& EnvironmentNames();

}  // namespace tip::env

#endif  // TIP_ENV_ENVIRONMENT_H_
