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

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <numeric>

#include <gtest/gtest.h>

#include "oracles.h"
#include "tip/planner/icem.h"

namespace tip::planner {
namespace {

using oracle::LogLogSlope;
using oracle::MeanPsd;

TEST(ColoredNoiseTest, SpectralSlopeAtBetaThree) {
  const auto noise = ColoredNoise(3.0, 64, 1, 10000, 7);
  EXPECT_NEAR(LogLogSlope(MeanPsd(noise)), -3.0, 0.3);
}

TEST(ColoredNoiseTest, WhiteNoiseLimit) {
  const auto noise = ColoredNoise(0.0, 64, 1, 10000, 8);
  const auto psd = MeanPsd(noise);
  EXPECT_NEAR(LogLogSlope(psd), 0.0, 0.1);
  // Spectral flatness: geometric over arithmetic mean of the PSD.
  double log_sum = 0.0, sum = 0.0;
  for (size_t k = 1; k < psd.size(); ++k) {
    log_sum += std::log(psd[k]);
    sum += psd[k];
  }
  const double n = psd.size() - 1.0;
  EXPECT_GT(std::exp(log_sum / n) / (sum / n), 0.99);
  // Unit white noise: lag-1 autocorrelation near zero.
  double c0 = 0, c1 = 0;
  for (const Matrix& s : noise) {
    for (int t = 0; t + 1 < 64; ++t) {
      c0 += s(0, t) * s(0, t);
      c1 += s(0, t) * s(0, t + 1);
    }
  }
  EXPECT_NEAR(c1 / c0, 0.0, 0.02);
}

TEST(ColoredNoiseTest, UnitMarginalVariance) {
  for (double beta : {0.0, 1.0, 3.0}) {
    const auto noise = ColoredNoise(beta, 32, 2, 4000, 9);
    double sum = 0, sum2 = 0;
    int count = 0;
    for (const Matrix& s : noise) {
      ASSERT_EQ(s.rows(), 2);
      ASSERT_EQ(s.cols(), 32);
      sum += s.sum();
      sum2 += s.squaredNorm();
      count += s.size();
    }
    const double mean = sum / count;
    EXPECT_NEAR(sum2 / count - mean * mean, 1.0, 0.1) << "beta " << beta;
  }
}

TEST(ColoredNoiseTest, DeterministicAndValidated) {
  const auto a = ColoredNoise(3.0, 16, 2, 5, 11);
  const auto b = ColoredNoise(3.0, 16, 2, 5, 11);
  for (size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i], b[i]);
  EXPECT_NE(a[0], ColoredNoise(3.0, 16, 2, 5, 12)[0]);
  EXPECT_THROW(ColoredNoise(3.0, 1, 1, 5, 0), InvalidArgument);
}

PlannerConfig PendulumLike() {
  PlannerConfig c;
  c.population = 25;
  c.elites = 3;
  c.horizon = 20;
  c.iterations = 3;
  c.action_low = Vector::Constant(1, -2.0);
  c.action_high = Vector::Constant(1, 2.0);
  return c;
}

CostEvaluator Quadratic(const Matrix& target) {
  return [target](const std::vector<ActionSequence>& batch) {
    std::vector<double> out;
    for (const auto& a : batch) out.push_back((a - target).squaredNorm());
    return out;
  };
}

double WorstError(const PlannerConfig& config, double c, uint64_t seed) {
  const Matrix target = Matrix::Constant(config.action_dim(), config.horizon, c);
  const IcemResult r = IcemOptimize(Quadratic(target), config, {}, seed);
  return (r.best_actions - target).cwiseAbs().maxCoeff();
}

TEST(IcemTest, RecoversQuadraticOptimumWithEnoughSamples) {
  // White noise suits a per-coordinate target; 40 iterations of 100.
  PlannerConfig config = PendulumLike();
  config.population = 100;
  config.elites = 10;
  config.iterations = 40;
  config.noise_exponent = 0.0;
  for (double c : {-1.2, 0.0, 0.7, 1.5}) {
    for (uint64_t seed = 0; seed < 10; ++seed) {
      EXPECT_LE(WorstError(config, c, seed), 0.05) << "c " << c << " seed " << seed;
    }
  }
}

TEST(IcemTest, RecoversScalarOptimumWithPendulumBudget) {
  PlannerConfig config = PendulumLike();
  config.horizon = 1;
  for (double c : {-1.2, 0.0, 0.7, 1.5}) {
    for (uint64_t seed = 0; seed < 10; ++seed) {
      EXPECT_LE(WorstError(config, c, seed), 0.05) << "c " << c << " seed " << seed;
    }
  }
}

TEST(IcemTest, PendulumBudgetImprovesOnInitialMean) {
  const PlannerConfig config = PendulumLike();
  for (double c : {-1.2, 0.7, 1.5}) {
    const Matrix target = Matrix::Constant(1, 20, c);
    const double initial = (MidpointSequence(config) - target).squaredNorm();
    for (uint64_t seed = 0; seed < 10; ++seed) {
      const IcemResult r = IcemOptimize(Quadratic(target), config, {}, seed);
      EXPECT_LT(r.best_cost, initial);
    }
  }
}

TEST(IcemTest, ConstantCost) {
  const PlannerConfig config = PendulumLike();
  const IcemResult r = IcemOptimize(
      [](const std::vector<ActionSequence>& b) {
        return std::vector<double>(b.size(), 4.25);
      },
      config, {}, 3);
  EXPECT_EQ(r.best_cost, 4.25);
  EXPECT_GE(r.best_actions.minCoeff(), -2.0);
  EXPECT_LE(r.best_actions.maxCoeff(), 2.0);
}

TEST(IcemTest, Deterministic) {
  const PlannerConfig config = PendulumLike();
  const Matrix target = Matrix::Constant(1, 20, 0.3);
  const IcemResult a = IcemOptimize(Quadratic(target), config, {}, 5);
  const IcemResult b = IcemOptimize(Quadratic(target), config, {}, 5);
  EXPECT_EQ(a.best_actions, b.best_actions);
  EXPECT_EQ(a.best_cost, b.best_cost);
}

TEST(IcemTest, BoundsMonotonicityAndFixedBatch) {
  PlannerConfig config = PendulumLike();
  config.iterations = 6;
  config.action_low = Vector::Constant(2, -1.0);
  config.action_high = Vector::Constant(2, 0.5);
  Matrix target(2, 20);
  target.row(0).setConstant(3.0);  // outside the box on purpose
  target.row(1).setConstant(-0.2);
  std::vector<int> sizes;
  bool in_bounds = true;
  auto eval = [&](const std::vector<ActionSequence>& batch) {
    sizes.push_back(static_cast<int>(batch.size()));
    for (const auto& a : batch) {
      in_bounds &= a.minCoeff() >= -1.0 && a.maxCoeff() <= 0.5;
    }
    return Quadratic(target)(batch);
  };
  const IcemResult r = IcemOptimize(eval, config, {}, 1);
  EXPECT_TRUE(in_bounds);
  for (int s : sizes) EXPECT_EQ(s, config.population);
  for (size_t i = 1; i < r.best_cost_per_iteration.size(); ++i) {
    EXPECT_LE(r.best_cost_per_iteration[i], r.best_cost_per_iteration[i - 1]);
  }
}

TEST(IcemTest, PopulationDecaysWithoutFixedBatch) {
  PlannerConfig config = PendulumLike();
  config.fixed_batch = false;
  config.iterations = 4;
  const IcemResult r =
      IcemOptimize(Quadratic(Matrix::Zero(1, 20)), config, {}, 2);
  ASSERT_EQ(r.batch_sizes.size(), 4u);
  EXPECT_EQ(r.batch_sizes[0], 25);
  const int cached = config.CachedElites();
  for (int it = 1; it < 4; ++it) {
    const int decayed = std::max(
        static_cast<int>(std::ceil(25 * std::pow(1.25, -it))), 2 * config.elites);
    EXPECT_EQ(r.batch_sizes[it], decayed + cached);
  }
}

TEST(IcemTest, ElitesAreCarriedToNextIteration) {
  PlannerConfig config = PendulumLike();
  config.elites = 5;
  config.elite_cache_fraction = 0.3;  // ceil(1.5) = 2
  config.iterations = 4;
  std::vector<std::vector<ActionSequence>> batches;
  std::vector<std::vector<double>> costs;
  auto eval = [&](const std::vector<ActionSequence>& batch) {
    batches.push_back(batch);
    costs.push_back(Quadratic(Matrix::Constant(1, 20, 0.4))(batch));
    return costs.back();
  };
  IcemOptimize(eval, config, {}, 4);
  ASSERT_EQ(config.CachedElites(), 2);
  for (size_t k = 0; k + 1 < batches.size(); ++k) {
    std::vector<int> order(batches[k].size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return costs[k][a] < costs[k][b]; });
    int found = 0;
    for (int e = 0; e < config.elites; ++e) {
      for (const auto& c : batches[k + 1]) {
        if (c == batches[k][order[e]]) {
          ++found;
          break;
        }
      }
    }
    EXPECT_GE(found, config.CachedElites()) << "iteration " << k;
  }
}

TEST(IcemTest, NaNCostsAreCountedAndAllNaNThrows) {
  const PlannerConfig config = PendulumLike();
  int calls = 0;
  auto some_nan = [&](const std::vector<ActionSequence>& batch) {
    std::vector<double> out = Quadratic(Matrix::Zero(1, 20))(batch);
    out[0] = std::numeric_limits<double>::quiet_NaN();
    ++calls;
    return out;
  };
  const IcemResult r = IcemOptimize(some_nan, config, {}, 0);
  EXPECT_EQ(r.nan_count, calls);
  EXPECT_TRUE(std::isfinite(r.best_cost));
  auto all_nan = [](const std::vector<ActionSequence>& batch) {
    return std::vector<double>(batch.size(), std::numeric_limits<double>::quiet_NaN());
  };
  EXPECT_THROW(IcemOptimize(all_nan, config, {}, 0), NumericalError);
}

TEST(IcemTest, ValidateRejectsBadConfigs) {
  PlannerConfig c = PendulumLike();
  EXPECT_NO_THROW(c.Validate(200));
  EXPECT_THROW(c.Validate(10), InvalidArgument);  // h > H
  c.elites = 25;
  EXPECT_THROW(c.Validate(), InvalidArgument);
  c = PendulumLike();
  c.population_decay = 0.9;
  EXPECT_THROW(c.Validate(), InvalidArgument);
  c = PendulumLike();
  c.elite_cache_fraction = 1.0;
  EXPECT_THROW(c.Validate(), InvalidArgument);
  c = PendulumLike();
  c.action_high = c.action_low;
  EXPECT_THROW(c.Validate(), InvalidArgument);
}

TEST(IcemTest, WarmStartShiftsAndPads) {
  PlannerConfig config = PendulumLike();
  config.horizon = 4;
  IcemResult r;
  r.mean = Matrix(1, 4);
  r.mean << 1, 2, 3, 4;
  r.elites = {r.mean, 2 * r.mean, 3 * r.mean};
  const IcemWarmStart w = ShiftWarmStart(r, 2, config);
  Matrix expected(1, 4);
  expected << 3, 4, 4, 4;
  EXPECT_EQ(w.mean, expected);
  ASSERT_EQ(static_cast<int>(w.elites.size()), config.CachedElites());
  EXPECT_EQ(w.elites[0], expected);
  EXPECT_EQ(MidpointSequence(config), Matrix::Zero(1, 4));
}

}  // namespace
}  // namespace tip::planner
