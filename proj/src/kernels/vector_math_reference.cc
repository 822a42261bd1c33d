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

#include "tip/kernels/vector_math.h"

namespace tip::kernels {

void VectorCosReference(std::span<double> values) {
  for (double& v : values) v = std::cos(v);
}

void VectorExpReference(std::span<double> values) {
  for (double& v : values) v = std::exp(v);
}

}  // namespace tip::kernels
