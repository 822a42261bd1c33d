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

#include "tip/gp/kernel.h"

#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "tip/kernels/vector_math.h"

namespace tip::gp {

bool KernelHyperparams::IsValid() const {
  if (lengthscales.size() == 0) return false;
  for (double l : lengthscales) {
    if (!(l > 0.0) || !std::isfinite(l)) return false;
  }
  return signal_variance > 0.0 && noise_variance > 0.0 &&
         std::isfinite(signal_variance) && std::isfinite(noise_variance) &&
         std::isfinite(prior_mean);
}

Matrix SeKernel(const Matrix& a, const Matrix& b, const KernelHyperparams& h) {
  const Vector inv = h.lengthscales.cwiseInverse();
  const Matrix sa = inv.asDiagonal() * a;
  const Matrix sb = inv.asDiagonal() * b;
  const Vector na = sa.colwise().squaredNorm().transpose();
  const Vector nb = sb.colwise().squaredNorm().transpose();
  Matrix k = sa.transpose() * sb;
  // exponent: -0.5 * max(|a|^2 + |b|^2 - 2 a.b, 0)
  for (Eigen::Index j = 0; j < k.cols(); ++j) {
    for (Eigen::Index i = 0; i < k.rows(); ++i) {
      const double d2 = na(i) + nb(j) - 2.0 * k(i, j);
      k(i, j) = -0.5 * (d2 > 0.0 ? d2 : 0.0);
    }
  }
  kernels::VectorExp({k.data(), static_cast<size_t>(k.size())});
  k *= h.signal_variance;
  return k;
}

namespace {

double ConditionNumber(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(a, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) {
    return std::numeric_limits<double>::infinity();
  }
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  if (lo <= 0.0) return std::numeric_limits<double>::infinity();
  return hi / lo;
}

}  // namespace

Matrix JitteredCholesky(const Matrix& a, double* jitter_used) {
  if (jitter_used != nullptr) *jitter_used = 0.0;
  const Eigen::Index n = a.rows();
  if (n == 0) return Matrix(0, 0);
  if (!a.allFinite()) {
    throw NumericalError("Cholesky: matrix has non-finite entries",
                         std::numeric_limits<double>::quiet_NaN());
  }
  Eigen::LLT<Matrix> llt(a);
  if (llt.info() == Eigen::Success) return llt.matrixL();

  double jitter = 1e-8 * std::abs(a.trace()) / static_cast<double>(n);
  if (jitter <= 0.0) jitter = 1e-12;
  for (int attempt = 0; attempt < 4; ++attempt, jitter *= 10.0) {
    Matrix shifted = a;
    shifted.diagonal().array() += jitter;
    llt.compute(shifted);
    if (llt.info() == Eigen::Success) {
      if (jitter_used != nullptr) *jitter_used = jitter;
      return llt.matrixL();
    }
  }
  const double cond = ConditionNumber(a);
  std::ostringstream msg;
  msg << "Cholesky failed after jitter escalation (n=" << n
      << ", condition number=" << cond << ")";
  throw NumericalError(msg.str(), cond);
}

double LogDetFromCholesky(const Matrix& lower) {
  return 2.0 * lower.diagonal().array().log().sum();
}

double JointEntropy(const Matrix& covariance) {
  return LogDetFromCholesky(JitteredCholesky(covariance));
}

}  // namespace tip::gp
