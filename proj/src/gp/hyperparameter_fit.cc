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

#include "tip/gp/hyperparameter_fit.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include <Eigen/Cholesky>

namespace tip::gp {

namespace {

constexpr double kMinVariance = 1e-6;
constexpr double kMaxVariance = 1e2;
constexpr double kMinLengthscaleFactor = 1e-2;
constexpr double kMaxLengthscaleFactor = 1e2;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Packs log(lengthscales), log(signal), log(noise).
Vector Pack(const KernelHyperparams& h) {
  const int d = static_cast<int>(h.lengthscales.size());
  Vector theta(d + 2);
  theta.head(d) = h.lengthscales.array().log();
  theta(d) = std::log(h.signal_variance);
  theta(d + 1) = std::log(h.noise_variance);
  return theta;
}

KernelHyperparams Unpack(const Vector& theta) {
  const int d = static_cast<int>(theta.size()) - 2;
  KernelHyperparams h;
  h.lengthscales = theta.head(d).array().exp();
  h.signal_variance = std::exp(theta(d));
  h.noise_variance = std::exp(theta(d + 1));
  return h;
}

struct Box {
  Vector lower;
  Vector upper;
  Vector Clamp(const Vector& theta) const {
    return theta.cwiseMax(lower).cwiseMin(upper);
  }
};

struct RestartOutcome {
  Vector theta;
  double value = kNegInf;
  double initial_value = kNegInf;
};

// Rprop- ascent on the log marginal likelihood, projected onto the box.
RestartOutcome Ascend(const Matrix& x, const Vector& y, Vector theta,
                      const Box& box, int iterations) {
  RestartOutcome out;
  theta = box.Clamp(theta);
  Vector grad;
  double value = LogMarginalLikelihood(x, y, Unpack(theta), &grad);
  out.initial_value = value;
  out.theta = theta;
  out.value = value;
  if (!std::isfinite(value)) return out;

  Vector step = Vector::Constant(theta.size(), 0.1);
  Vector prev_grad = Vector::Zero(theta.size());
  for (int it = 0; it < iterations; ++it) {
    Vector next = theta;
    for (Eigen::Index j = 0; j < theta.size(); ++j) {
      const double sign_product = grad(j) * prev_grad(j);
      if (sign_product > 0.0) {
        step(j) = std::min(step(j) * 1.2, 1.0);
      } else if (sign_product < 0.0) {
        step(j) = std::max(step(j) * 0.5, 1e-6);
        grad(j) = 0.0;
      }
      if (grad(j) > 0.0) next(j) += step(j);
      if (grad(j) < 0.0) next(j) -= step(j);
    }
    next = box.Clamp(next);
    Vector next_grad;
    const double next_value =
        LogMarginalLikelihood(x, y, Unpack(next), &next_grad);
    if (!std::isfinite(next_value) || !next_grad.allFinite()) {
      step *= 0.5;
      prev_grad.setZero();
      continue;
    }
    prev_grad = grad;
    theta = next;
    grad = next_grad;
    value = next_value;
    if (value > out.value) {
      out.value = value;
      out.theta = theta;
    }
    if (step.maxCoeff() < 1e-5) break;
  }
  return out;
}

std::vector<KernelHyperparams> DefaultHyperparams(const Vector& range,
                                                  int output_dim) {
  KernelHyperparams h;
  h.lengthscales = range.unaryExpr([](double r) { return r > 0.0 ? r : 1.0; });
  h.signal_variance = 1.0;
  h.noise_variance = 1e-2;
  return std::vector<KernelHyperparams>(output_dim, h);
}

}  // namespace

double LogMarginalLikelihood(const Matrix& inputs, const Vector& targets,
                             const KernelHyperparams& h, Vector* gradient) {
  const Eigen::Index n = inputs.cols();
  const Eigen::Index d = inputs.rows();
  const Matrix kf = SeKernel(inputs, inputs, h);
  Matrix k = kf;
  k.diagonal().array() += h.noise_variance;
  Eigen::LLT<Matrix> llt(k);
  if (llt.info() != Eigen::Success) return kNegInf;
  const Vector centered = targets.array() - h.prior_mean;
  const Vector alpha = llt.solve(centered);
  const Matrix& l = llt.matrixLLT();
  const double log_det = 2.0 * l.diagonal().array().log().sum();
  const double value = -0.5 * centered.dot(alpha) - 0.5 * log_det -
                       0.5 * static_cast<double>(n) *
                           std::log(2.0 * std::numbers::pi);
  if (!std::isfinite(value)) return kNegInf;

  if (gradient != nullptr) {
    // W = alpha alpha' - K^-1; dL/dtheta = 0.5 tr(W dK/dtheta).
    Matrix w = alpha * alpha.transpose();
    w -= llt.solve(Matrix::Identity(n, n));
    const Matrix wk = w.cwiseProduct(kf);
    gradient->resize(d + 2);
    for (Eigen::Index j = 0; j < d; ++j) {
      const double inv_l2 = 1.0 / (h.lengthscales(j) * h.lengthscales(j));
      double acc = 0.0;
      for (Eigen::Index b = 0; b < n; ++b) {
        for (Eigen::Index a = 0; a < n; ++a) {
          const double diff = inputs(j, a) - inputs(j, b);
          acc += wk(a, b) * diff * diff;
        }
      }
      (*gradient)(j) = 0.5 * acc * inv_l2;
    }
    (*gradient)(d) = 0.5 * wk.sum();
    (*gradient)(d + 1) = 0.5 * h.noise_variance * w.trace();
  }
  return value;
}

FitResult FitHyperparameters(const Matrix& inputs, const Matrix& targets,
                             const FitOptions& options) {
  const int input_dim = static_cast<int>(inputs.rows());
  const int output_dim = static_cast<int>(targets.rows());
  const int n = static_cast<int>(inputs.cols());
  if (targets.cols() != n) {
    throw InvalidArgument("FitHyperparameters: inputs/targets size mismatch");
  }
  if (options.restarts < 1) {
    throw InvalidArgument("FitHyperparameters: restarts must be positive");
  }
  if (!inputs.allFinite() || !targets.allFinite()) {
    throw FitError("FitHyperparameters: non-finite training data");
  }

  Vector range = options.input_range;
  if (range.size() == 0) {
    range = Vector::Zero(input_dim);
    if (n > 0) {
      range = inputs.rowwise().maxCoeff() - inputs.rowwise().minCoeff();
    }
  }
  if (range.size() != input_dim) {
    throw InvalidArgument("FitHyperparameters: input_range has wrong size");
  }

  FitResult result;
  if (n < 2) {
    result.used_fallback = true;
    result.hyperparams = options.fallback.empty()
                             ? DefaultHyperparams(range, output_dim)
                             : options.fallback;
    result.log_likelihood.assign(output_dim,
                                 std::numeric_limits<double>::quiet_NaN());
    result.best_initial_log_likelihood = result.log_likelihood;
    std::ostringstream msg;
    msg << "hyperparameter fit skipped: " << n
        << " training point(s), need at least 2; using defaults";
    result.warnings.push_back(msg.str());
    return result;
  }

  // Standardization.
  const Vector x_mean = inputs.rowwise().mean();
  Vector x_scale =
      ((inputs.colwise() - x_mean).array().square().rowwise().mean()).sqrt();
  for (double& s : x_scale) {
    if (!(s > 1e-12)) s = 1.0;
  }
  const Matrix x_std = x_scale.cwiseInverse().asDiagonal() *
                       (inputs.colwise() - x_mean);

  Box box;
  box.lower.resize(input_dim + 2);
  box.upper.resize(input_dim + 2);
  for (int j = 0; j < input_dim; ++j) {
    const double r = range(j) > 0.0 ? range(j) / x_scale(j) : 1.0;
    box.lower(j) = std::log(kMinLengthscaleFactor * r);
    box.upper(j) = std::log(kMaxLengthscaleFactor * r);
  }
  box.lower.tail(2).setConstant(std::log(kMinVariance));
  box.upper.tail(2).setConstant(std::log(kMaxVariance));

  std::mt19937_64 rng(DeriveSeed(options.seed, 0x4b1d));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto log_uniform = [&](double lo, double hi) {
    return std::log(lo) + unit(rng) * (std::log(hi) - std::log(lo));
  };

  result.hyperparams.resize(output_dim);
  result.log_likelihood.resize(output_dim);
  result.best_initial_log_likelihood.resize(output_dim);
  for (int d = 0; d < output_dim; ++d) {
    const double y_mean = targets.row(d).mean();
    double y_scale = std::sqrt(
        (targets.row(d).array() - y_mean).square().mean());
    if (!(y_scale > 1e-12)) y_scale = 1.0;
    const Vector y_std =
        (targets.row(d).transpose().array() - y_mean) / y_scale;

    RestartOutcome best;
    double best_init = kNegInf;
    for (int r = 0; r < options.restarts; ++r) {
      Vector theta(input_dim + 2);
      if (r == 0) {
        theta.head(input_dim).setZero();  // unit lengthscale in std units
        theta(input_dim) = 0.0;
        theta(input_dim + 1) = std::log(1e-2);
      } else {
        for (int j = 0; j < input_dim; ++j) theta(j) = log_uniform(0.2, 5.0);
        theta(input_dim) = log_uniform(0.1, 10.0);
        theta(input_dim + 1) = log_uniform(1e-4, 1e-1);
      }
      const RestartOutcome outcome =
          Ascend(x_std, y_std, theta, box, options.max_iterations);
      best_init = std::max(best_init, outcome.initial_value);
      if (outcome.value > best.value) best = outcome;
    }
    if (!std::isfinite(best.value)) {
      std::ostringstream msg;
      msg << "hyperparameter fit failed for output dim " << d
          << ": marginal likelihood non-finite at every restart (n=" << n
          << ")";
      throw FitError(msg.str());
    }

    KernelHyperparams h = Unpack(best.theta);
    h.lengthscales = h.lengthscales.cwiseProduct(x_scale);
    h.signal_variance *= y_scale * y_scale;
    h.noise_variance *= y_scale * y_scale;
    h.prior_mean = y_mean;
    result.hyperparams[d] = h;
    result.log_likelihood[d] = best.value;
    result.best_initial_log_likelihood[d] = best_init;
  }
  return result;
}

FitResult FitHyperparameters(const TransitionDataset& data,
                             const FitOptions& options) {
  return FitHyperparameters(data.Inputs(), data.Targets(), options);
}

}  // namespace tip::gp
