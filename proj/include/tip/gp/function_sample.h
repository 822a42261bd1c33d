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

#ifndef TIP_GP_FUNCTION_SAMPLE_H_
#define TIP_GP_FUNCTION_SAMPLE_H_

#include <cstdint>
#include <memory>
#include <vector>

#include "tip/common.h"
#include "tip/gp/gp_posterior.h"

namespace tip::gp {

inline constexpr int kDefaultNumFeatures = 512;
inline constexpr int kMinNumFeatures = 100;

// One draw from the GP posterior, represented pathwise:
//
//   f(x) = m + sqrt(2 s / B) sum_b w_b cos(omega_b . x + phi_b)
//            + sum_i v_i k(x, x_i)
//
// where the first sum is a random-feature draw from the prior and v corrects
// it towards the data: v = (K + noise)^-1 (y - m - f_prior(X) - eps), with
// eps ~ N(0, noise). Evaluation never refactorizes, and the sample is a fixed
// deterministic function.
class PosteriorFunctionSample {
 public:
  int input_dim() const { return input_dim_; }
  int output_dim() const { return static_cast<int>(outputs_.size()); }
  int num_features() const { return num_features_; }

  // Function values (output_dim x n) at the input columns.
  Matrix Evaluate(const Matrix& inputs) const;

  // Next states for state/action column batches: s + f(s, a), with periodic
  // dims wrapped.
  Matrix Step(const Matrix& states, const Matrix& actions) const;

 private:
  friend PosteriorFunctionSample SamplePosteriorFunction(
      const GpPosterior& posterior, int num_features, uint64_t seed);

  struct Output {
    Matrix frequencies;       // B x input_dim, already divided by lengthscale
    Vector phases;            // B
    Vector weights;           // B, includes sqrt(2 s / B)
    Vector update;            // N pathwise-update coefficients
    double signal_variance;
    double prior_mean;
    Vector inverse_lengthscales;
    Matrix scaled_inputs;     // training inputs / lengthscale, input_dim x N
    Vector scaled_sq_norms;   // N
  };

  int input_dim_ = 0;
  int num_features_ = 0;
  std::vector<int> periodic_dims_;
  std::vector<Output> outputs_;
};

// Draws one posterior function. Throws InvalidArgument if num_features <
// 100. Same (posterior, num_features, seed) gives an identical function.
PosteriorFunctionSample SamplePosteriorFunction(const GpPosterior& posterior,
                                                int num_features,
                                                uint64_t seed);

}  // namespace tip::gp

#endif  // TIP_GP_FUNCTION_SAMPLE_H_
