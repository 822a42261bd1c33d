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

#ifndef TIP_GP_HYPERPARAMETER_FIT_H_
#define TIP_GP_HYPERPARAMETER_FIT_H_

#include <cstdint>
#include <string>
#include <vector>

#include "tip/common.h"
#include "tip/gp/dataset.h"
#include "tip/gp/kernel.h"

namespace tip::gp {

class FitError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

struct FitOptions {
  int restarts = 3;
  uint64_t seed = 0;
  int max_iterations = 100;
  // Per-input-dim extent used for the lengthscale bounds
  // [1e-2, 1e2] * range. Taken from the data when empty.
  Vector input_range;
  // Returned when there are fewer than two points. Derived from
  // `input_range` when empty.
  std::vector<KernelHyperparams> fallback;
};

struct FitResult {
  std::vector<KernelHyperparams> hyperparams;
  // Per output dim, in standardized units. NaN when the fallback was used.
  std::vector<double> log_likelihood;
  // Per output dim, best value over all restart initializations.
  std::vector<double> best_initial_log_likelihood;
  bool used_fallback = false;
  std::vector<std::string> warnings;
};

// Type-II maximum likelihood for independent SE-ARD GPs, one per target row.
// Inputs and targets are standardized with the data statistics, log
// hyperparameters are optimized by multi-start Rprop inside the box
// lengthscale in [1e-2, 1e2] * range, variances in [1e-6, 1e2], and the
// result is mapped back to raw units (prior_mean = target mean).
FitResult FitHyperparameters(const Matrix& inputs, const Matrix& targets,
                             const FitOptions& options);
FitResult FitHyperparameters(const TransitionDataset& data,
                             const FitOptions& options);

// Log marginal likelihood of `targets` under a zero-mean-after-offset GP;
// -inf when the kernel matrix cannot be factorized. Gradient w.r.t.
// (log lengthscales, log signal_variance, log noise_variance) is written
// to `gradient` when non-null.
double LogMarginalLikelihood(const Matrix& inputs, const Vector& targets,
                             const KernelHyperparams& h,
                             Vector* gradient = nullptr);

}  // namespace tip::gp

#endif  // TIP_GP_HYPERPARAMETER_FIT_H_
