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

#include "tip/gp/function_sample.h"

#include <cmath>
#include <numbers>
#include <random>

#include "tip/kernels/vector_math.h"

namespace tip::gp {

PosteriorFunctionSample SamplePosteriorFunction(const GpPosterior& posterior,
                                                int num_features,
                                                uint64_t seed) {
  if (num_features < kMinNumFeatures) {
    throw InvalidArgument("SamplePosteriorFunction: need at least 100 features");
  }
  PosteriorFunctionSample sample;
  sample.input_dim_ = posterior.input_dim();
  sample.num_features_ = num_features;
  sample.periodic_dims_ = posterior.periodic_dims();
  sample.outputs_.resize(posterior.output_dim());

  const int n = posterior.size();
  const Matrix& train = posterior.inputs();
  for (int d = 0; d < posterior.output_dim(); ++d) {
    const KernelHyperparams& h = posterior.hyperparams()[d];
    std::mt19937_64 rng(DeriveSeed(seed, static_cast<uint64_t>(d)));
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> uniform(0.0,
                                                   2.0 * std::numbers::pi);

    auto& out = sample.outputs_[d];
    out.signal_variance = h.signal_variance;
    out.prior_mean = h.prior_mean;
    out.inverse_lengthscales = h.lengthscales.cwiseInverse();
    out.frequencies.resize(num_features, sample.input_dim_);
    for (int b = 0; b < num_features; ++b) {
      for (int j = 0; j < sample.input_dim_; ++j) {
        out.frequencies(b, j) = normal(rng) * out.inverse_lengthscales(j);
      }
    }
    out.phases.resize(num_features);
    for (int b = 0; b < num_features; ++b) out.phases(b) = uniform(rng);
    const double scale =
        std::sqrt(2.0 * h.signal_variance / static_cast<double>(num_features));
    out.weights.resize(num_features);
    for (int b = 0; b < num_features; ++b) out.weights(b) = scale * normal(rng);

    out.scaled_inputs = out.inverse_lengthscales.asDiagonal() * train;
    out.scaled_sq_norms = out.scaled_inputs.colwise().squaredNorm().transpose();
    out.update = Vector::Zero(n);
  }

  if (n > 0) {
    // Prior draw at the training inputs, with update set to zero.
    const Matrix prior_at_train = sample.Evaluate(train);
    for (int d = 0; d < posterior.output_dim(); ++d) {
      std::mt19937_64 rng(DeriveSeed(seed, 0x9015e, static_cast<uint64_t>(d)));
      std::normal_distribution<double> normal(0.0, 1.0);
      Vector residual(n);
      const Vector& noise = posterior.noise(d);
      for (int i = 0; i < n; ++i) {
        residual(i) = posterior.targets()(d, i) - prior_at_train(d, i) -
                      std::sqrt(noise(i)) * normal(rng);
      }
      const auto lower = posterior.cholesky(d).triangularView<Eigen::Lower>();
      lower.solveInPlace(residual);
      posterior.cholesky(d).transpose().triangularView<Eigen::Upper>().solveInPlace(residual);
      sample.outputs_[d].update = std::move(residual);
    }
  }
  return sample;
}

Matrix PosteriorFunctionSample::Evaluate(const Matrix& inputs) const {
  if (inputs.rows() != input_dim_) {
    throw InvalidArgument("PosteriorFunctionSample: input dim mismatch");
  }
  const Eigen::Index count = inputs.cols();
  Matrix values(output_dim(), count);
  Matrix features;
  Matrix cross;
  for (int d = 0; d < output_dim(); ++d) {
    const Output& out = outputs_[d];
    features.noalias() = out.frequencies * inputs;
    features.colwise() += out.phases;
    kernels::VectorCos({features.data(), static_cast<size_t>(features.size())});
    values.row(d).noalias() = out.weights.transpose() * features;
    values.row(d).array() += out.prior_mean;

    if (out.update.size() > 0) {
      const Matrix scaled = out.inverse_lengthscales.asDiagonal() * inputs;
      const Vector q_norms = scaled.colwise().squaredNorm().transpose();
      cross.noalias() = out.scaled_inputs.transpose() * scaled;
      for (Eigen::Index j = 0; j < count; ++j) {
        for (Eigen::Index i = 0; i < cross.rows(); ++i) {
          const double d2 = out.scaled_sq_norms(i) + q_norms(j) - 2.0 * cross(i, j);
          cross(i, j) = -0.5 * (d2 > 0.0 ? d2 : 0.0);
        }
      }
      kernels::VectorExp({cross.data(), static_cast<size_t>(cross.size())});
      values.row(d).noalias() +=
          out.signal_variance * (out.update.transpose() * cross);
    }
  }
  return values;
}

Matrix PosteriorFunctionSample::Step(const Matrix& states,
                                     const Matrix& actions) const {
  Matrix inputs(states.rows() + actions.rows(), states.cols());
  inputs.topRows(states.rows()) = states;
  inputs.bottomRows(actions.rows()) = actions;
  return ApplyStateDelta(states, Evaluate(inputs), periodic_dims_);
}

}  // namespace tip::gp
