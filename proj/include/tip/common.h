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

#ifndef TIP_COMMON_H_
#define TIP_COMMON_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace tip {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Raised when a factorization cannot be made to succeed, or a computation
// produces non-finite values that must not propagate.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what, double condition = 0.0)
      : std::runtime_error(what), condition_number_(condition) {}
  double condition_number() const { return condition_number_; }

 private:
  double condition_number_;
};

// Raised for malformed arguments and configurations.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// splitmix64 finalizer; used to derive independent RNG streams from a base
// seed and a sequence of stream tags.
inline uint64_t MixSeed(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline uint64_t DeriveSeed(uint64_t base, uint64_t a) {
  return MixSeed(MixSeed(base) ^ (a + 0x632be59bd9b4e019ULL));
}

inline uint64_t DeriveSeed(uint64_t base, uint64_t a, uint64_t b) {
  return DeriveSeed(DeriveSeed(base, a), b);
}

inline uint64_t DeriveSeed(uint64_t base, uint64_t a, uint64_t b, uint64_t c) {
  return DeriveSeed(DeriveSeed(base, a, b), c);
}

// Ordered (state, action) sequence plus terminal state. `states` holds one
// more entry than `actions`: states[i+1] is the successor of
// (states[i], actions[i]).
struct Trajectory {
  std::vector<Vector> states;
  std::vector<Vector> actions;

  int length() const { return static_cast<int>(actions.size()); }
  bool empty() const { return actions.empty(); }
  const Vector& terminal_state() const { return states.back(); }
};

// Concatenates state and action into a model input.
inline Vector ModelInput(const Vector& state, const Vector& action) {
  Vector x(state.size() + action.size());
  x << state, action;
  return x;
}

}  // namespace tip

#endif  // TIP_COMMON_H_
