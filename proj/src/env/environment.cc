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

#include "tip/env/environment.h"

#include <sstream>

#include "tip/env/benchmarks.h"

namespace tip::env {

Vector Environment::ClipAction(const Vector& action) const {
  return action.cwiseMax(spec_.action_low).cwiseMin(spec_.action_high);
}

Vector Environment::Step(const Vector& state, const Vector& action) const {
  if (state.size() != spec_.state_dim || action.size() != spec_.action_dim) {
    std::ostringstream msg;
    msg << name() << ": step expects state dim " << spec_.state_dim
        << " and action dim " << spec_.action_dim << ", got " << state.size()
        << " and " << action.size();
    throw InvalidArgument(msg.str());
  }
  if (state.hasNaN() || action.hasNaN()) {
    std::ostringstream msg;
    msg << name() << ": NaN in step input (state=" << state.transpose()
        << ", action=" << action.transpose() << ")";
    throw InvalidArgument(msg.str());
  }
  return Dynamics(state, ClipAction(action));
}

Matrix Environment::StepBatch(const Matrix& states,
                              const Matrix& actions) const {
  Matrix next(states.rows(), states.cols());
  for (Eigen::Index j = 0; j < states.cols(); ++j) {
    next.col(j) = Step(states.col(j), actions.col(j));
  }
  return next;
}

Vector Environment::SampleAction(std::mt19937_64& rng) const {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Vector a(spec_.action_dim);
  for (int i = 0; i < spec_.action_dim; ++i) {
    a(i) = spec_.action_low(i) +
           unit(rng) * (spec_.action_high(i) - spec_.action_low(i));
  }
  return a;
}

Trajectory Environment::Rollout(const Vector& start,
                                const std::vector<Vector>& actions,
                                double* total_return) const {
  Trajectory traj;
  traj.states.reserve(actions.size() + 1);
  traj.states.push_back(start);
  double ret = 0.0;
  for (const Vector& a : actions) {
    const Vector clipped = ClipAction(a);
    Vector next = Step(traj.states.back(), clipped);
    ret += Reward(traj.states.back(), clipped, next);
    traj.actions.push_back(clipped);
    traj.states.push_back(std::move(next));
  }
  if (total_return != nullptr) *total_return = ret;
  return traj;
}

double TrajectoryReturn(const Environment& env, const Trajectory& trajectory) {
  double ret = 0.0;
  for (int i = 0; i < trajectory.length(); ++i) {
    ret += env.Reward(trajectory.states[i], trajectory.actions[i],
                      trajectory.states[i + 1]);
  }
  return ret;
}

const std::vector<std::string>& EnvironmentNames() {
  static const std::vector<std::string> names = {
      "pendulum", "cartpole", "lava_path", "nonlinear_gain_1",
      "nonlinear_gain_2"};
  return names;
}

std::unique_ptr<Environment> MakeEnvironment(std::string_view name) {
  if (name == "pendulum") return std::make_unique<Pendulum>();
  if (name == "cartpole") return std::make_unique<Cartpole>();
  if (name == "lava_path") return std::make_unique<LavaPath>();
  if (name == "nonlinear_gain_1") return std::make_unique<NonlinearGain>(1);
  if (name == "nonlinear_gain_2") return std::make_unique<NonlinearGain>(2);
  throw InvalidArgument("unknown environment '" + std::string(name) + "'");
}

}  // namespace tip::env
