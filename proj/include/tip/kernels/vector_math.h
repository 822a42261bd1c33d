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

#ifndef TIP_KERNELS_VECTOR_MATH_H_
#define TIP_KERNELS_VECTOR_MATH_H_

#include <span>

namespace tip::kernels {

// In-place elementwise transcendental functions over contiguous buffers.
// These are compiled with vectorized libm entry points and dominate the cost
// of evaluating random-feature function samples.
void VectorCos(std::span<double> values);
void VectorExp(std::span<double> values);

// Scalar std:: versions; kept as the reference for tests and benchmarks.
void VectorCosReference(std::span<double> values);
void VectorExpReference(std::span<double> values);

}  // namespace tip::kernels

#endif  // TIP_KERNELS_VECTOR_MATH_H_
