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

#ifndef TIP_ENV_BENCHMARKS_H_
#define TIP_ENV_BENCHMARKS_H_

#include "tip/env/environment.h"

namespace tip::env {

// Torque-limited pendulum swing-up. Angle 0 is upright. The state is
// (cos theta, sin theta, theta_dot) so the model never sees the angle wrap.
class Pendulum : public Environment {
 public:
  static constexpr double kGravity = 10.0;
  static constexpr double kMass = 1.0;
  static constexpr double kLength = 1.0;
  static constexpr double kDt = 0.05;
  static constexpr double kMaxTorque = 2.0;
  static constexpr double kMaxSpeed = 8.0;

  Pendulum();
  Vector Reset(uint64_t seed) const override;
  double Reward(const Vector& state, const Vector& action,
                const Vector& next_state) const override;
  Vector SampleState(std::mt19937_64& rng) const override;
  Vector InputRange() const override;
  Vector GoalState() const override;

  static Vector FromAngle(double theta, double theta_dot);
  static double Angle(const Vector& state);

 protected:
  Vector Dynamics(const Vector& state, const Vector& action) const override;
};

// Cart-pole swing-up with a pole-tip distance reward. State is
// (x, x_dot, theta, theta_dot) with theta = 0 upright and the angle left
// unwrapped; the pole starts hanging at theta = pi.
class Cartpole : public Environment {
 public:
  static constexpr double kGravity = 9.8;
  static constexpr double kCartMass = 1.0;
  static constexpr double kPoleMass = 0.1;
  static constexpr double kHalfLength = 0.5;
  static constexpr double kDt = 0.1;
  static constexpr int kSubsteps = 4;
  static constexpr double kMaxForce = 10.0;
  static constexpr double kSigmoidGain = 10.0;
  static constexpr double kSigmoidOffset = 0.25;

  Cartpole();
  Vector Reset(uint64_t seed) const override;
  double Reward(const Vector& state, const Vector& action,
                const Vector& next_state) const override;
  Vector SampleState(std::mt19937_64& rng) const override;
  Vector InputRange() const override;
  Vector GoalState() const override;

  // Distance from the pole tip to the upright goal position.
  static double TipDistance(const Vector& state);
  // Total mechanical energy (cart + pole as a uniform rod).
  static double Energy(const Vector& state);

 protected:
  Vector Dynamics(const Vector& state, const Vector& action) const override;
};

// Point mass navigating past a lava strip through a narrow bridge. State
// (x, y, x_dot, y_dot), action is a 2D force. Fixed start.
class LavaPath : public Environment {
 public:
  static constexpr double kDt = 0.1;
  static constexpr double kMass = 1.0;
  static constexpr double kMaxSpeed = 2.0;
  static constexpr double kMaxForce = 2.0;
  static constexpr double kLavaPenalty = 500.0;
  // Lava occupies |x| <= kLavaHalfWidth, |y| <= kLavaHalfHeight except the
  // bridge band kBridgeLow <= y <= kBridgeHigh.
  static constexpr double kLavaHalfWidth = 0.4;
  static constexpr double kLavaHalfHeight = 2.0;
  static constexpr double kBridgeLow = 0.3;
  static constexpr double kBridgeHigh = 1.0;

  LavaPath();
  Vector Reset(uint64_t seed) const override;
  double Reward(const Vector& state, const Vector& action,
                const Vector& next_state) const override;
  Vector SampleState(std::mt19937_64& rng) const override;
  Vector InputRange() const override;
  Vector GoalState() const override;

  static bool InLava(const Vector& state);
  static Vector Start();

 protected:
  Vector Dynamics(const Vector& state, const Vector& action) const override;
};

// Regulation to the origin through a fixed mixing matrix and an elementwise
// action nonlinearity: s' = s + G g(a). Variant 1 uses g = tanh (saturating),
// variant 2 uses g(a) = a |a| (expanding).
class NonlinearGain : public Environment {
 public:
  static constexpr double kMaxAction = 1.5;
  static constexpr double kActionCost = 0.01;

  explicit NonlinearGain(int variant);
  Vector Reset(uint64_t seed) const override;
  double Reward(const Vector& state, const Vector& action,
                const Vector& next_state) const override;
  Vector SampleState(std::mt19937_64& rng) const override;
  Vector InputRange() const override;
  Vector GoalState() const override;

  static Eigen::Matrix2d Mixing();
  static Vector Start();
  Vector Gain(const Vector& action) const;

 protected:
  Vector Dynamics(const Vector& state, const Vector& action) const override;

 private:
  int variant_;
};

}  // namespace tip::env

#endif  // TIP_ENV_BENCHMARKS_H_
