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

#ifndef TIP_GP_GP_POSTERIOR_H_
#define TIP_GP_GP_POSTERIOR_H_

#include <cstdint>
#include <vector>

#include "tip/common.h"
#include "tip/gp/dataset.h"
#include "tip/gp/kernel.h"

namespace tip::gp {

// Per-output-dimension joint predictive distribution over a query set.
struct JointPrediction {
  std::vector<Vector> mean;        // one |X| vector per output dim
  std::vector<Matrix> covariance;  // one |X| x |X| matrix per output dim
};

// Independent GPs, one per output dimension, sharing the training inputs.
// Each output dimension has its own hyperparameters, its own per-point
// noise vector, and a cached Cholesky factor of K + diag(noise).
//
// Immutable after construction; conditioning returns a new posterior.
class GpPosterior {
 public:
  // Fits nothing: factorizes the dataset under the given hyperparameters.
  GpPosterior(const TransitionDataset& data,
              std::vector<KernelHyperparams> hyperparams);

  // Generic regression form. `inputs` is input_dim x N, `targets` is
  // output_dim x N. `state_dim`/`periodic_dims` are only used by the
  // next-state helpers and may be left at their defaults for plain
  // regression.
  GpPosterior(Matrix inputs, Matrix targets,
              std::vector<KernelHyperparams> hyperparams,
              uint64_t snapshot = 0, std::vector<int> periodic_dims = {});

  int input_dim() const { return static_cast<int>(inputs_.rows()); }
  int output_dim() const { return static_cast<int>(hyperparams_.size()); }
  int size() const { return static_cast<int>(inputs_.cols()); }
  uint64_t snapshot() const { return snapshot_; }
  const std::vector<int>& periodic_dims() const { return periodic_dims_; }
  const std::vector<KernelHyperparams>& hyperparams() const {
    return hyperparams_;
  }
  const Matrix& inputs() const { return inputs_; }
  const Matrix& targets() const { return targets_; }
  const Matrix& cholesky(int dim) const { return cholesky_[dim]; }
  const Vector& alpha(int dim) const { return alpha_[dim]; }
  const Vector& noise(int dim) const { return noise_[dim]; }

  // Joint mean/covariance of the observed outputs at the query columns.
  // Observation noise is included on the covariance diagonal.
  JointPrediction PredictJoint(const Matrix& query) const;

  // Predictive means (output_dim x n) and marginal variances including
  // observation noise (output_dim x n).
  Matrix PredictMean(const Matrix& query) const;
  Matrix PredictVariance(const Matrix& query) const;

  // Mean next states for state/action column batches.
  Matrix PredictNextStates(const Matrix& states, const Matrix& actions) const;

  // Treats the trajectory's transitions as extra observations with noise
  // 1e-6 * signal_variance. Inputs within 1e-9 of an existing input (or of
  // an earlier trajectory point) are dropped.
  GpPosterior ConditionNoiseless(const Trajectory& trajectory) const;
  GpPosterior ConditionNoiseless(const Matrix& inputs,
                                 const Matrix& targets) const;

  // Indices of columns of `inputs` that survive deduplication against the
  // training inputs and each other.
  std::vector<int> NovelColumns(const Matrix& inputs) const;

 private:
  GpPosterior() = default;
  void Factorize();

  Matrix inputs_;
  Matrix targets_;
  std::vector<KernelHyperparams> hyperparams_;
  std::vector<Vector> noise_;
  std::vector<Matrix> cholesky_;
  std::vector<Vector> alpha_;
  std::vector<int> periodic_dims_;
  uint64_t snapshot_ = 0;
};

// Relative noise of conditioned ("noiseless") observations.
inline constexpr double kConditioningJitter = 1e-6;
// Max-abs distance under which two inputs are considered duplicates.
inline constexpr double kDuplicateTolerance = 1e-9;

// Convenience wrapper: builds the posterior and predicts jointly.
JointPrediction PosteriorJoint(const TransitionDataset& data,
                               const std::vector<KernelHyperparams>& hypers,
                               const Matrix& query);

}  // namespace tip::gp

#endif  // TIP_GP_GP_POSTERIOR_H_
