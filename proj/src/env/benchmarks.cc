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

#include "tip/env/benchmarks.h"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace tip::env {

namespace {

constexpr double kPi = std::numbers::pi;

Vector Vec(std::initializer_list<double> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v(i++) = x;
  return v;
}

double Uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

EnvSpec MakeSpec(std::string name, int state_dim, int action_dim,
                 int horizon, double action_bound, bool fixed_start) {
  EnvSpec spec;
  spec.name = std::move(name);
  spec.state_dim = state_dim;
  spec.action_dim = action_dim;
  spec.horizon = horizon;
  spec.action_low = Vector::Constant(action_dim, -action_bound);
  spec.action_high = Vector::Constant(action_dim, action_bound);
  spec.fixed_start = fixed_start;
  return spec;
}

}  // namespace

// --- Pendulum -------------------------------------------------------------

Pendulum::Pendulum()
    : Environment(MakeSpec("pendulum", 3, 1, 200, kMaxTorque, false)) {}

Vector Pendulum::FromAngle(double theta, double theta_dot) {
  return Vec({std::cos(theta), std::sin(theta), theta_dot});
}

double Pendulum::Angle(const Vector& state) {
  return std::atan2(state(1), state(0));
}

Vector Pendulum::Reset(uint64_t seed) const {
  std::mt19937_64 rng(DeriveSeed(seed, 0x9e5e7));
  const double theta = Uniform(rng, -kPi, kPi);
  const double theta_dot = Uniform(rng, -1.0, 1.0);
  return FromAngle(theta, theta_dot);
}

Vector Pendulum::Dynamics(const Vector& state, const Vector& action) const {
  const double theta = Angle(state);
  const double u = action(0);
  double theta_dot =
      state(2) + (kGravity / kLength * std::sin(theta) +
                  u / (kMass * kLength * kLength)) * kDt;
  theta_dot = std::clamp(theta_dot, -kMaxSpeed, kMaxSpeed);
  return FromAngle(theta + theta_dot * kDt, theta_dot);
}

double Pendulum::Reward(const Vector& /*state*/, const Vector& action,
                        const Vector& next_state) const {
  const double theta = Angle(next_state);
  const double theta_dot = next_state(2);
  const double u = action(0);
  return -(theta * theta + 0.1 * theta_dot * theta_dot + 0.001 * u * u);
}

Vector Pendulum::SampleState(std::mt19937_64& rng) const {
  const double theta = Uniform(rng, -kPi, kPi);
  return FromAngle(theta, Uniform(rng, -kMaxSpeed, kMaxSpeed));
}

Vector Pendulum::InputRange() const {
  return Vec({2.0, 2.0, 2.0 * kMaxSpeed, 2.0 * kMaxTorque});
}

Vector Pendulum::GoalState() const { return FromAngle(0.0, 0.0); }

// --- Cartpole -------------------------------------------------------------

Cartpole::Cartpole()
    : Environment(MakeSpec("cartpole", 4, 1, 100, kMaxForce, false)) {}

Vector Cartpole::Reset(uint64_t seed) const {
  std::mt19937_64 rng(DeriveSeed(seed, 0xca47));
  return Vec({Uniform(rng, -0.05, 0.05), Uniform(rng, -0.05, 0.05),
              kPi + Uniform(rng, -0.05, 0.05), Uniform(rng, -0.05, 0.05)});
}

Vector Cartpole::Dynamics(const Vector& state, const Vector& action) const {
  constexpr double kTotalMass = kCartMass + kPoleMass;
  constexpr double kPoleMassLength = kPoleMass * kHalfLength;
  constexpr double kSubDt = kDt / kSubsteps;
  double x = state(0), x_dot = state(1), theta = state(2),
         theta_dot = state(3);
  const double force = action(0);
  for (int i = 0; i < kSubsteps; ++i) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const double temp =
        (force + kPoleMassLength * theta_dot * theta_dot * s) / kTotalMass;
    const double theta_acc =
        (kGravity * s - c * temp) /
        (kHalfLength * (4.0 / 3.0 - kPoleMass * c * c / kTotalMass));
    const double x_acc = temp - kPoleMassLength * theta_acc * c / kTotalMass;
    // semi-implicit Euler
    x_dot += kSubDt * x_acc;
    theta_dot += kSubDt * theta_acc;
    x += kSubDt * x_dot;
    theta += kSubDt * theta_dot;
  }
  return Vec({x, x_dot, theta, theta_dot});
}

double Cartpole::TipDistance(const Vector& state) {
  const double tip_x = state(0) + 2.0 * kHalfLength * std::sin(state(2));
  const double tip_y = 2.0 * kHalfLength * std::cos(state(2));
  const double dy = tip_y - 2.0 * kHalfLength;
  return std::sqrt(tip_x * tip_x + dy * dy);
}

double Cartpole::Energy(const Vector& state) {
  const double x_dot = state(1), theta = state(2), theta_dot = state(3);
  const double l = kHalfLength;
  const double vx = x_dot + l * theta_dot * std::cos(theta);
  const double vy = -l * theta_dot * std::sin(theta);
  const double kinetic = 0.5 * kCartMass * x_dot * x_dot +
                         0.5 * kPoleMass * (vx * vx + vy * vy) +
                         0.5 * (kPoleMass * l * l / 3.0) * theta_dot * theta_dot;
  const double potential = kPoleMass * kGravity * l * std::cos(theta);
  return kinetic + potential;
}

double Cartpole::Reward(const Vector& /*state*/, const Vector& /*action*/,
                        const Vector& next_state) const {
  const double d = TipDistance(next_state);
  return -1.0 / (1.0 + std::exp(-kSigmoidGain * (d - kSigmoidOffset)));
}

Vector Cartpole::SampleState(std::mt19937_64& rng) const {
  return Vec({Uniform(rng, -2.0, 2.0), Uniform(rng, -4.0, 4.0),
              Uniform(rng, -kPi, kPi), Uniform(rng, -10.0, 10.0)});
}

Vector Cartpole::InputRange() const {
  return Vec({4.0, 8.0, 2.0 * kPi, 20.0, 2.0 * kMaxForce});
}

Vector Cartpole::GoalState() const { return Vec({0.0, 0.0, 0.0, 0.0}); }

// --- Lava path ------------------------------------------------------------

LavaPath::LavaPath()
    : Environment(MakeSpec("lava_path", 4, 2, 20, kMaxForce, true)) {}

Vector LavaPath::Start() { return Vec({-1.0, 0.0, 0.0, 0.0}); }

Vector LavaPath::Reset(uint64_t /*seed*/) const { return Start(); }

bool LavaPath::InLava(const Vector& state) {
  const double x = state(0), y = state(1);
  if (std::abs(x) > kLavaHalfWidth || std::abs(y) > kLavaHalfHeight) {
    return false;
  }
  return !(y >= kBridgeLow && y <= kBridgeHigh);
}

Vector LavaPath::Dynamics(const Vector& state, const Vector& action) const {
  Vector next(4);
  for (int i = 0; i < 2; ++i) {
    const double v = std::clamp(state(2 + i) + kDt * action(i) / kMass,
                                -kMaxSpeed, kMaxSpeed);
    next(2 + i) = v;
    next(i) = state(i) + kDt * v;
  }
  return next;
}

double LavaPath::Reward(const Vector& /*state*/, const Vector& /*action*/,
                        const Vector& next_state) const {
  const double dist = (next_state.head<2>() - GoalState().head<2>()).norm();
  return -dist - (InLava(next_state) ? kLavaPenalty : 0.0);
}

Vector LavaPath::SampleState(std::mt19937_64& rng) const {
  return Vec({Uniform(rng, -2.0, 2.0), Uniform(rng, -2.0, 2.0),
              Uniform(rng, -kMaxSpeed, kMaxSpeed),
              Uniform(rng, -kMaxSpeed, kMaxSpeed)});
}

Vector LavaPath::InputRange() const {
  return Vec({4.0, 4.0, 2.0 * kMaxSpeed, 2.0 * kMaxSpeed, 2.0 * kMaxForce,
              2.0 * kMaxForce});
}

Vector LavaPath::GoalState() const { return Vec({1.0, 0.0, 0.0, 0.0}); }

// --- Nonlinear gain -------------------------------------------------------

NonlinearGain::NonlinearGain(int variant)
    : Environment(MakeSpec(variant == 1 ? "nonlinear_gain_1" : "nonlinear_gain_2",
                           2, 2, 10, kMaxAction, true)),
      variant_(variant) {
  if (variant != 1 && variant != 2) {
    throw InvalidArgument("NonlinearGain: variant must be 1 or 2");
  }
}

Eigen::Matrix2d NonlinearGain::Mixing() {
  Eigen::Matrix2d g;
  g << 1.0, 0.4, -0.3, 0.9;
  return g;
}

Vector NonlinearGain::Start() { return Vec({3.0, -2.0}); }

Vector NonlinearGain::Reset(uint64_t /*seed*/) const { return Start(); }

Vector NonlinearGain::Gain(const Vector& action) const {
  if (variant_ == 1) return action.array().tanh();
  return action.array() * action.array().abs();
}

Vector NonlinearGain::Dynamics(const Vector& state,
                               const Vector& action) const {
  return state + Mixing() * Gain(action);
}

double NonlinearGain::Reward(const Vector& /*state*/, const Vector& action,
                             const Vector& next_state) const {
  return -next_state.squaredNorm() - kActionCost * action.squaredNorm();
}

Vector NonlinearGain::SampleState(std::mt19937_64& rng) const {
  return Vec({Uniform(rng, -4.0, 4.0), Uniform(rng, -4.0, 4.0)});
}

Vector NonlinearGain::InputRange() const {
  return Vec({8.0, 8.0, 2.0 * kMaxAction, 2.0 * kMaxAction});
}

Vector NonlinearGain::GoalState() const { return Vector::Zero(2); }

}  // namespace tip::env
