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
#include <random>

#include <unsupported/Eigen/FFT>

#include "tip/planner/icem.h"

namespace tip::planner {

std::vector<Matrix> ColoredNoise(double exponent, int horizon, int dims,
                                 int count, uint64_t seed) {
  if (horizon < 2) throw InvalidArgument("ColoredNoise: horizon must be >= 2");
  if (dims < 1 || count < 0) {
    throw InvalidArgument("ColoredNoise: bad dims/count");
  }
  const int bins = horizon / 2 + 1;
  const bool even = horizon % 2 == 0;

  // Amplitude per frequency bin k/h; the DC bin borrows the lowest nonzero
  // frequency.
  Vector scale(bins);
  for (int k = 0; k < bins; ++k) {
    const double f = static_cast<double>(std::max(k, 1)) / horizon;
    scale(k) = std::pow(f, -exponent / 2.0);
  }
  // Exact standard deviation of each unnormalized output sample: the DC and
  // Nyquist bins are real with variance 2 s^2, the others appear twice as a
  // conjugate pair with variance 2 s^2 each.
  double power = 0.0;
  for (int k = 0; k < bins; ++k) {
    const bool single = k == 0 || (even && k == bins - 1);
    power += (single ? 2.0 : 4.0) * scale(k) * scale(k);
  }
  const double sigma = std::sqrt(power) / horizon;

  std::mt19937_64 rng(DeriveSeed(seed, 0xc0105));
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> spectrum(horizon);
  std::vector<std::complex<double>> signal(horizon);

  std::vector<Matrix> out(count, Matrix(dims, horizon));
  for (int c = 0; c < count; ++c) {
    for (int d = 0; d < dims; ++d) {
      for (int k = 0; k < bins; ++k) {
        double re = normal(rng) * scale(k);
        double im = normal(rng) * scale(k);
        if (k == 0 || (even && k == bins - 1)) {
          re *= std::sqrt(2.0);
          im = 0.0;
        }
        spectrum[k] = {re, im};
        if (k > 0 && k < horizon - k) spectrum[horizon - k] = {re, -im};
      }
      fft.inv(signal, spectrum);
      for (int t = 0; t < horizon; ++t) {
        out[c](d, t) = signal[t].real() / sigma;
      }
    }
  }
  return out;
}

}  // namespace tip::planner
