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

#ifndef TIP_GP_DATASET_H_
#define TIP_GP_DATASET_H_

#include <cstdint>
#include <vector>

#include "tip/common.h"

namespace tip::gp {

// Difference s' - s with periodic dimensions wrapped to [-pi, pi).
Vector StateDelta(const Vector& state, const Vector& next_state,
                  const std::vector<int>& periodic_dims);

// s + delta with periodic dimensions wrapped to [-pi, pi). Operates on
// column batches as well as single states.
Matrix ApplyStateDelta(const Matrix& states, const Matrix& deltas,
                       const std::vector<int>& periodic_dims);

double WrapAngle(double angle);

// Append-only set of (state, action, next_state) triples. The snapshot id
// is a content hash that changes on every append.
class TransitionDataset {
 public:
  TransitionDataset(int state_dim, int action_dim,
                    std::vector<int> periodic_dims = {});

  void Append(const Vector& state, const Vector& action,
              const Vector& next_state);
  void Append(const Trajectory& trajectory);

  int size() const { return static_cast<int>(states_.size()); }
  bool empty() const { return states_.empty(); }
  int state_dim() const { return state_dim_; }
  int action_dim() const { return action_dim_; }
  int input_dim() const { return state_dim_ + action_dim_; }
  const std::vector<int>& periodic_dims() const { return periodic_dims_; }

  const Vector& state(int i) const { return states_[i]; }
  const Vector& action(int i) const { return actions_[i]; }
  const Vector& next_state(int i) const { return next_states_[i]; }

  uint64_t snapshot() const { return snapshot_; }

  // (state ++ action) columns, input_dim x size.
  Matrix Inputs() const;
  // Regression targets (wrapped deltas), state_dim x size.
  Matrix Targets() const;

 private:
  int state_dim_;
  int action_dim_;
  std::vector<int> periodic_dims_;
  std::vector<Vector> states_;
  std::vector<Vector> actions_;
  std::vector<Vector> next_states_;
  uint64_t snapshot_;
};

}  // namespace tip::gp

#endif  // TIP_GP_DATASET_H_
