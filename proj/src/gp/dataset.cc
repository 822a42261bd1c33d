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

#include "tip/gp/dataset.h"

#include <cmath>
#include <cstring>
#include <numbers>
#include <sstream>

namespace tip::gp {

double WrapAngle(double angle) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  double wrapped = std::fmod(angle + std::numbers::pi, kTwoPi);
  if (wrapped < 0.0) wrapped += kTwoPi;
  return wrapped - std::numbers::pi;
}

Vector StateDelta(const Vector& state, const Vector& next_state,
                  const std::vector<int>& periodic_dims) {
  Vector delta = next_state - state;
  for (int d : periodic_dims) delta(d) = WrapAngle(delta(d));
  return delta;
}

Matrix ApplyStateDelta(const Matrix& states, const Matrix& deltas,
                       const std::vector<int>& periodic_dims) {
  Matrix next = states + deltas;
  for (int d : periodic_dims) {
    for (Eigen::Index j = 0; j < next.cols(); ++j) {
      next(d, j) = WrapAngle(next(d, j));
    }
  }
  return next;
}

namespace {

uint64_t HashBytes(uint64_t h, const void* data, size_t n) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  for (size_t i = 0; i < n; ++i) {
    h ^= bytes[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

uint64_t HashVector(uint64_t h, const Vector& v) {
  return HashBytes(h, v.data(), sizeof(double) * v.size());
}

}  // namespace

TransitionDataset::TransitionDataset(int state_dim, int action_dim,
                                     std::vector<int> periodic_dims)
    : state_dim_(state_dim),
      action_dim_(action_dim),
      periodic_dims_(std::move(periodic_dims)) {
  if (state_dim <= 0 || action_dim <= 0) {
    throw InvalidArgument("TransitionDataset: dimensions must be positive");
  }
  for (int d : periodic_dims_) {
    if (d < 0 || d >= state_dim) {
      throw InvalidArgument("TransitionDataset: periodic dim out of range");
    }
  }
  snapshot_ = 0xcbf29ce484222325ULL;
  const int dims[2] = {state_dim, action_dim};
  snapshot_ = HashBytes(snapshot_, dims, sizeof(dims));
}

void TransitionDataset::Append(const Vector& state, const Vector& action,
                               const Vector& next_state) {
  if (state.size() != state_dim_ || next_state.size() != state_dim_ ||
      action.size() != action_dim_) {
    std::ostringstream msg;
    msg << "TransitionDataset::Append: expected state dim " << state_dim_
        << " and action dim " << action_dim_ << ", got (" << state.size()
        << ", " << action.size() << ", " << next_state.size() << ")";
    throw InvalidArgument(msg.str());
  }
  if (!state.allFinite() || !action.allFinite() || !next_state.allFinite()) {
    throw InvalidArgument("TransitionDataset::Append: non-finite transition");
  }
  states_.push_back(state);
  actions_.push_back(action);
  next_states_.push_back(next_state);
  snapshot_ = HashVector(snapshot_, state);
  snapshot_ = HashVector(snapshot_, action);
  snapshot_ = HashVector(snapshot_, next_state);
}

void TransitionDataset::Append(const Trajectory& trajectory) {
  for (int i = 0; i < trajectory.length(); ++i) {
    Append(trajectory.states[i], trajectory.actions[i],
           trajectory.states[i + 1]);
  }
}

Matrix TransitionDataset::Inputs() const {
  Matrix x(input_dim(), size());
  for (int i = 0; i < size(); ++i) {
    x.col(i).head(state_dim_) = states_[i];
    x.col(i).tail(action_dim_) = actions_[i];
  }
  return x;
}

Matrix TransitionDataset::Targets() const {
  Matrix y(state_dim_, size());
  for (int i = 0; i < size(); ++i) {
    y.col(i) = StateDelta(states_[i], next_states_[i], periodic_dims_);
  }
  return y;
}

}  // namespace tip::gp
