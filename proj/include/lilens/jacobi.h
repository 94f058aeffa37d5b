/*
 * Copyright 2026 The lilens Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef LILENS_JACOBI_H_
#define LILENS_JACOBI_H_

#include <cstddef>
#include <span>
#include <vector>

namespace lilens {

// Eigenvalues of a dense symmetric n x n matrix (row-major) by cyclic Jacobi
// rotations, sorted in non-increasing order.
std::vector<double> SymmetricEigenvalues(std::vector<double> matrix, size_t n,
                                         double tolerance = 1e-14,
                                         int max_sweeps = 100);

// Singular values of a rows x cols matrix (row-major, float storage), via the
// eigenvalues of the smaller Gram matrix. Returns min(rows, cols) values in
// non-increasing order. Values below rank_tolerance * sigma_1 are reported
// as 0.
std::vector<double> SingularValues(std::span<const float> matrix, size_t rows,
                                   size_t cols, double rank_tolerance = 1e-6);

}  // namespace lilens

#endif  // LILENS_JACOBI_H_
