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

#include <exception>

#include "tip/cost/costs.h"
#include "tip/gp/kernel.h"

namespace tip::cost {

TipCostEvaluator::TipCostEvaluator(const gp::GpPosterior& posterior,
                                   const OptimalTrajectorySamples& samples)
    : posterior_(posterior), samples_(samples) {
  if (posterior.snapshot() != samples.snapshot) {
    throw InvalidArgument(
        "optimal trajectory samples were drawn under a different dataset "
        "snapshot");
  }
  const int n = posterior_.size();
  const int dims = posterior_.output_dim();
  cells_.reserve(samples_.trajectories.size());
  for (const Trajectory& traj : samples_.trajectories) {
    Cell cell;
    const Matrix all = QueryPoints(traj);
    const std::vector<int> keep =
        all.size() > 0 ? posterior_.NovelColumns(all) : std::vector<int>{};
    cell.inputs.resize(posterior_.input_dim(), keep.size());
    for (size_t j = 0; j < keep.size(); ++j) cell.inputs.col(j) = all.col(keep[j]);
    cell.cross.resize(dims);
    cell.schur_lower.resize(dims);
    if (!keep.empty()) {
      for (int d = 0; d < dims; ++d) {
        const auto& h = posterior_.hyperparams()[d];
        Matrix schur = gp::SeKernel(cell.inputs, cell.inputs, h);
        schur.diagonal().array() += gp::kConditioningJitter * h.signal_variance;
        if (n > 0) {
          cell.cross[d] =
              posterior_.cholesky(d).triangularView<Eigen::Lower>().solve(
                  gp::SeKernel(posterior_.inputs(), cell.inputs, h));
          schur.noalias() -= cell.cross[d].transpose() * cell.cross[d];
        }
        schur = 0.5 * (schur + schur.transpose());
        cell.schur_lower[d] = gp::JitteredCholesky(schur);
      }
    }
    cells_.push_back(std::move(cell));
  }
}

Matrix TipCostEvaluator::Whitened(const Cell& cell, int dim,
                                  const Matrix& query, const Matrix& v1) const {
  Matrix w = gp::SeKernel(cell.inputs, query, posterior_.hyperparams()[dim]);
  if (v1.size() > 0) w.noalias() -= cell.cross[dim].transpose() * v1;
  cell.schur_lower[dim].triangularView<Eigen::Lower>().solveInPlace(w);
  return w;
}

double TipCostEvaluator::Evaluate(const Matrix& query, bool joint,
                                  Vector* pointwise) const {
  if (query.rows() != posterior_.input_dim() || query.cols() == 0) {
    throw InvalidArgument("TipCostEvaluator: malformed query set");
  }
  if (!joint) *pointwise = Vector::Zero(query.cols());
  if (cells_.empty()) return 0.0;
  const int n = posterior_.size();
  double total = 0.0;
  for (int d = 0; d < posterior_.output_dim(); ++d) {
    const auto& h = posterior_.hyperparams()[d];
    Matrix v1;
    if (n > 0) {
      v1 = posterior_.cholesky(d).triangularView<Eigen::Lower>().solve(
          gp::SeKernel(posterior_.inputs(), query, h));
    }
    if (joint) {
      Matrix base = gp::SeKernel(query, query, h);
      if (n > 0) base.noalias() -= v1.transpose() * v1;
      base.diagonal().array() += h.noise_variance;
      base = 0.5 * (base + base.transpose());
      const double base_value = gp::JointEntropy(base);
      for (const Cell& cell : cells_) {
        if (cell.inputs.cols() == 0) continue;
        const Matrix w = Whitened(cell, d, query, v1);
        Matrix cov = base;
        cov.noalias() -= w.transpose() * w;
        cov = 0.5 * (cov + cov.transpose());
        total += gp::JointEntropy(cov) - base_value;
      }
    } else {
      // Stationary kernel: prior marginal variance is the signal variance.
      Vector base_var =
          Vector::Constant(query.cols(), h.signal_variance + h.noise_variance);
      if (n > 0) base_var -= v1.colwise().squaredNorm().transpose();
      const Vector base_log_var = base_var.array().log();
      for (const Cell& cell : cells_) {
        if (cell.inputs.cols() == 0) continue;
        const Matrix w = Whitened(cell, d, query, v1);
        const Vector var = base_var - w.colwise().squaredNorm().transpose();
        *pointwise += (var.array().log() - base_log_var.array()).matrix();
      }
    }
  }
  const double cells = static_cast<double>(cells_.size());
  if (!joint) {
    *pointwise /= cells;
    return pointwise->sum();
  }
  return total / cells;
}

double TipCostEvaluator::Joint(const Matrix& query) const {
  return Evaluate(query, true, nullptr);
}

double TipCostEvaluator::Summed(const Matrix& query) const {
  Vector pointwise;
  return Evaluate(query, false, &pointwise);
}

Vector TipCostEvaluator::Pointwise(const Matrix& query) const {
  Vector pointwise;
  Evaluate(query, false, &pointwise);
  return pointwise;
}

namespace {

template <typename F>
std::vector<double> ParallelMap(const std::vector<Matrix>& queries, F&& f) {
  const int count = static_cast<int>(queries.size());
  std::vector<double> out(count);
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < count; ++i) {
    try {
      out[i] = f(queries[i]);
    } catch (...) {
#pragma omp critical(tip_cost_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace

std::vector<double> TipCostEvaluator::JointBatch(
    const std::vector<Matrix>& queries) const {
  return ParallelMap(queries, [this](const Matrix& q) { return Joint(q); });
}

std::vector<double> TipCostEvaluator::SummedBatch(
    const std::vector<Matrix>& queries) const {
  return ParallelMap(queries, [this](const Matrix& q) { return Summed(q); });
}

std::vector<double> TipCostEvaluator::JointBatchReference(
    const std::vector<Matrix>& queries) const {
  std::vector<double> out;
  out.reserve(queries.size());
  for (const Matrix& q : queries) out.push_back(TipCost(q, posterior_, samples_));
  return out;
}

}  // namespace tip::cost
