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

// This translation unit is built with -O3 -ffast-math so that the loops
// below lower to libmvec SIMD calls. Keep it free of NaN/Inf checks.

#include "tip/kernels/vector_math.h"

#include <cmath>
#include <cstddef>

namespace tip::kernels {

void VectorCos(std::span<double> values) {
  double* data = values.data();
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(values.size());
#pragma omp simd
  for (std::ptrdiff_t i = 0; i < n; ++i) data[i] = std::cos(data[i]);
}

void VectorExp(std::span<double> values) {
  double* data = values.data();
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(values.size());
#pragma omp simd
  for (std::ptrdiff_t i = 0; i < n; ++i) data[i] = std::exp(data[i]);
}

}  // namespace tip::kernels
