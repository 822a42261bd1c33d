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

#ifndef TIP_GP_KERNEL_H_
#define TIP_GP_KERNEL_H_

#include "tip/common.h"

namespace tip::gp {

// Squared-exponential ARD kernel parameters for one output dimension.
// `prior_mean` is the constant GP mean in (unwrapped) delta space.
struct KernelHyperparams {
  Vector lengthscales;
  double signal_variance = 1.0;
  double noise_variance = 1e-2;
  double prior_mean = 0.0;

  bool IsValid() const;
};

// Gram matrix k(a_i, b_j); points are columns.
Matrix SeKernel(const Matrix& a, const Matrix& b, const KernelHyperparams& h);

// Cholesky factor (lower) of a symmetric matrix. On failure, adds a diagonal
// jitter starting at 1e-8 * trace / n and multiplies it by 10 up to three
// times; throws NumericalError with the condition number if all attempts
// fail. `jitter_used` receives the jitter that succeeded (0 if none).
Matrix JitteredCholesky(const Matrix& a, double* jitter_used = nullptr);

// log|A| given the lower Cholesky factor of A.
double LogDetFromCholesky(const Matrix& lower);

// log|cov| via its (jittered) Cholesky factor. The 1/2 factor and the
// 2*pi*e constant of the Gaussian entropy are dropped.
double JointEntropy(const Matrix& covariance);

}  // namespace tip::gp

#endif  // TIP_GP_KERNEL_H_
