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

#include "tip/gp/gp_posterior.h"

#include <sstream>
#include <utility>

namespace tip::gp {

GpPosterior::GpPosterior(const TransitionDataset& data,
                         std::vector<KernelHyperparams> hyperparams)
    : GpPosterior(data.Inputs(), data.Targets(), std::move(hyperparams),
                  data.snapshot(), data.periodic_dims()) {
  if (output_dim() != data.state_dim()) {
    throw InvalidArgument("GpPosterior: need one hyperparameter set per state dim");
  }
}

GpPosterior::GpPosterior(Matrix inputs, Matrix targets,
                         std::vector<KernelHyperparams> hyperparams,
                         uint64_t snapshot, std::vector<int> periodic_dims)
    : inputs_(std::move(inputs)),
      targets_(std::move(targets)),
      hyperparams_(std::move(hyperparams)),
      periodic_dims_(std::move(periodic_dims)),
      snapshot_(snapshot) {
  if (hyperparams_.empty()) {
    throw InvalidArgument("GpPosterior: no output dimensions");
  }
  if (targets_.rows() != output_dim() || targets_.cols() != inputs_.cols()) {
    std::ostringstream msg;
    msg << "GpPosterior: targets are " << targets_.rows() << "x"
        << targets_.cols() << ", expected " << output_dim() << "x"
        << inputs_.cols();
    throw InvalidArgument(msg.str());
  }
  for (const auto& h : hyperparams_) {
    if (!h.IsValid() || h.lengthscales.size() != inputs_.rows()) {
      throw InvalidArgument("GpPosterior: invalid kernel hyperparameters");
    }
  }
  noise_.resize(output_dim());
  for (int d = 0; d < output_dim(); ++d) {
    noise_[d] = Vector::Constant(size(), hyperparams_[d].noise_variance);
  }
  Factorize();
}

void GpPosterior::Factorize() {
  cholesky_.resize(output_dim());
  alpha_.resize(output_dim());
  for (int d = 0; d < output_dim(); ++d) {
    Matrix k = SeKernel(inputs_, inputs_, hyperparams_[d]);
    k.diagonal() += noise_[d];
    cholesky_[d] = JitteredCholesky(k);
    Vector centered =
        targets_.row(d).transpose().array() - hyperparams_[d].prior_mean;
    cholesky_[d].triangularView<Eigen::Lower>().solveInPlace(centered);
    cholesky_[d].transpose().triangularView<Eigen::Upper>().solveInPlace(
        centered);
    alpha_[d] = std::move(centered);
  }
}

JointPrediction GpPosterior::PredictJoint(const Matrix& query) const {
  if (query.rows() != input_dim() || query.cols() == 0) {
    throw InvalidArgument("PredictJoint: query must be nonempty with matching input dim");
  }
  JointPrediction out;
  out.mean.resize(output_dim());
  out.covariance.resize(output_dim());
  for (int d = 0; d < output_dim(); ++d) {
    const auto& h = hyperparams_[d];
    Matrix cov = SeKernel(query, query, h);
    Vector mean = Vector::Constant(query.cols(), h.prior_mean);
    if (size() > 0) {
      const Matrix cross = SeKernel(inputs_, query, h);
      mean += cross.transpose() * alpha_[d];
      const Matrix v =
          cholesky_[d].triangularView<Eigen::Lower>().solve(cross);
      cov.noalias() -= v.transpose() * v;
    }
    cov.diagonal().array() += h.noise_variance;
    out.covariance[d] = 0.5 * (cov + cov.transpose());
    out.mean[d] = std::move(mean);
  }
  return out;
}

Matrix GpPosterior::PredictMean(const Matrix& query) const {
  Matrix out(output_dim(), query.cols());
  for (int d = 0; d < output_dim(); ++d) {
    const auto& h = hyperparams_[d];
    out.row(d).setConstant(h.prior_mean);
    if (size() > 0) {
      out.row(d) += (SeKernel(inputs_, query, h).transpose() * alpha_[d])
                        .transpose();
    }
  }
  return out;
}

Matrix GpPosterior::PredictVariance(const Matrix& query) const {
  Matrix out(output_dim(), query.cols());
  for (int d = 0; d < output_dim(); ++d) {
    const auto& h = hyperparams_[d];
    out.row(d).setConstant(h.signal_variance + h.noise_variance);
    if (size() > 0) {
      const Matrix v = cholesky_[d].triangularView<Eigen::Lower>().solve(
          SeKernel(inputs_, query, h));
      out.row(d) -= v.colwise().squaredNorm();
    }
  }
  return out;
}

Matrix GpPosterior::PredictNextStates(const Matrix& states,
                                      const Matrix& actions) const {
  Matrix query(states.rows() + actions.rows(), states.cols());
  query.topRows(states.rows()) = states;
  query.bottomRows(actions.rows()) = actions;
  return ApplyStateDelta(states, PredictMean(query), periodic_dims_);
}

std::vector<int> GpPosterior::NovelColumns(const Matrix& inputs) const {
  std::vector<int> keep;
  for (Eigen::Index j = 0; j < inputs.cols(); ++j) {
    bool duplicate = false;
    for (Eigen::Index i = 0; i < inputs_.cols() && !duplicate; ++i) {
      duplicate = (inputs_.col(i) - inputs.col(j)).cwiseAbs().maxCoeff() <=
                  kDuplicateTolerance;
    }
    for (int i : keep) {
      if (duplicate) break;
      duplicate = (inputs.col(i) - inputs.col(j)).cwiseAbs().maxCoeff() <=
                  kDuplicateTolerance;
    }
    if (!duplicate) keep.push_back(static_cast<int>(j));
  }
  return keep;
}

GpPosterior GpPosterior::ConditionNoiseless(const Trajectory& trajectory) const {
  const int state_dim = output_dim();
  Matrix inputs(input_dim(), trajectory.length());
  Matrix targets(state_dim, trajectory.length());
  for (int i = 0; i < trajectory.length(); ++i) {
    inputs.col(i) = ModelInput(trajectory.states[i], trajectory.actions[i]);
    targets.col(i) = StateDelta(trajectory.states[i], trajectory.states[i + 1],
                                periodic_dims_);
  }
  return ConditionNoiseless(inputs, targets);
}

GpPosterior GpPosterior::ConditionNoiseless(const Matrix& inputs,
                                            const Matrix& targets) const {
  if (inputs.rows() != input_dim() || targets.rows() != output_dim() ||
      inputs.cols() != targets.cols()) {
    throw InvalidArgument("ConditionNoiseless: malformed transitions");
  }
  const std::vector<int> keep = NovelColumns(inputs);
  if (keep.empty()) return *this;

  const int n = size();
  const int m = static_cast<int>(keep.size());
  Matrix new_inputs(input_dim(), m);
  Matrix new_targets(output_dim(), m);
  for (int j = 0; j < m; ++j) {
    new_inputs.col(j) = inputs.col(keep[j]);
    new_targets.col(j) = targets.col(keep[j]);
  }

  GpPosterior out;
  out.inputs_.resize(input_dim(), n + m);
  out.inputs_ << inputs_, new_inputs;
  out.targets_.resize(output_dim(), n + m);
  out.targets_ << targets_, new_targets;
  out.hyperparams_ = hyperparams_;
  out.periodic_dims_ = periodic_dims_;
  out.snapshot_ = DeriveSeed(snapshot_, static_cast<uint64_t>(n + m));
  out.noise_.resize(output_dim());
  out.cholesky_.resize(output_dim());
  out.alpha_.resize(output_dim());

  // Block update of the cached factor:
  //   [L 0; B' C] with B = L^-1 K(X, Z), C = chol(K(Z, Z) + eps I - B'B).
  for (int d = 0; d < output_dim(); ++d) {
    const auto& h = hyperparams_[d];
    const double eps = kConditioningJitter * h.signal_variance;
    out.noise_[d].resize(n + m);
    out.noise_[d] << noise_[d], Vector::Constant(m, eps);

    Matrix schur = SeKernel(new_inputs, new_inputs, h);
    schur.diagonal().array() += eps;
    Matrix b;
    if (n > 0) {
      b = cholesky_[d].triangularView<Eigen::Lower>().solve(
          SeKernel(inputs_, new_inputs, h));
      schur.noalias() -= b.transpose() * b;
    }
    schur = 0.5 * (schur + schur.transpose());
    const Matrix c = JitteredCholesky(schur);

    Matrix& l = out.cholesky_[d];
    l = Matrix::Zero(n + m, n + m);
    if (n > 0) {
      l.topLeftCorner(n, n) = cholesky_[d];
      l.bottomLeftCorner(m, n) = b.transpose();
    }
    l.bottomRightCorner(m, m) = c;

    Vector centered =
        out.targets_.row(d).transpose().array() - h.prior_mean;
    const auto lower = l.triangularView<Eigen::Lower>();
    lower.solveInPlace(centered);
    l.transpose().triangularView<Eigen::Upper>().solveInPlace(centered);
    out.alpha_[d] = std::move(centered);
  }
  return out;
}

JointPrediction PosteriorJoint(const TransitionDataset& data,
                               const std::vector<KernelHyperparams>& hypers,
                               const Matrix& query) {
  return GpPosterior(data, hypers).PredictJoint(query);
}

}  // namespace tip::gp
