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

#include "lilens/jacobi.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace lilens {

std::vector<double> SymmetricEigenvalues(std::vector<double> a, size_t n,
                                         double tolerance, int max_sweeps) {
  if (a.size() != n * n) {
    throw std::invalid_argument("SymmetricEigenvalues: size mismatch");
  }
  auto at = [&](size_t i, size_t j) -> double& { return a[i * n + j]; };

  double total = 0.0;
  for (double v : a) total += v * v;
  const double threshold = tolerance * tolerance * std::max(total, 1e-300);

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (size_t p = 0; p < n; ++p) {
      for (size_t q = p + 1; q < n; ++q) off += at(p, q) * at(p, q);
    }
    if (off <= threshold) break;

    for (size_t p = 0; p + 1 < n; ++p) {
      for (size_t q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        const double app = at(p, p);
        const double aqq = at(q, q);
        // Rotation angle that annihilates a_pq (Rutishauser's form).
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);

        at(p, p) = app - t * apq;
        at(q, q) = aqq + t * apq;
        at(p, q) = at(q, p) = 0.0;
        for (size_t r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double arp = at(r, p);
          const double arq = at(r, q);
          at(r, p) = at(p, r) = arp - s * (arq + tau * arp);
          at(r, q) = at(q, r) = arq + s * (arp - tau * arq);
        }
      }
    }
  }

  std::vector<double> eigenvalues(n);
  for (size_t i = 0; i < n; ++i) eigenvalues[i] = at(i, i);
  std::sort(eigenvalues.begin(), eigenvalues.end(), std::greater<>());
  return eigenvalues;
}

std::vector<double> SingularValues(std::span<const float> matrix, size_t rows,
                                   size_t cols, double rank_tolerance) {
  if (matrix.size() != rows * cols) {
    throw std::invalid_argument("SingularValues: size mismatch");
  }
  const size_t k = std::min(rows, cols);
  if (k == 0) return {};

  // Gram matrix of the smaller side: A^T A (cols x cols) or A A^T.
  std::vector<double> gram(k * k, 0.0);
  if (cols <= rows) {
    for (size_t r = 0; r < rows; ++r) {
      const float* x = matrix.data() + r * cols;
      for (size_t i = 0; i < cols; ++i) {
        const double xi = x[i];
        for (size_t j = i; j < cols; ++j) gram[i * k + j] += xi * x[j];
      }
    }
  } else {
    for (size_t i = 0; i < rows; ++i) {
      const float* xi = matrix.data() + i * cols;
      for (size_t j = i; j < rows; ++j) {
        const float* xj = matrix.data() + j * cols;
        double s = 0.0;
        for (size_t c = 0; c < cols; ++c) s += static_cast<double>(xi[c]) * xj[c];
        gram[i * k + j] = s;
      }
    }
  }
  for (size_t i = 0; i < k; ++i) {
    for (size_t j = 0; j < i; ++j) gram[i * k + j] = gram[j * k + i];
  }

  std::vector<double> values = SymmetricEigenvalues(std::move(gram), k);
  const double floor =
      values.empty() ? 0.0 : rank_tolerance * rank_tolerance * values.front();
  for (double& v : values) v = v > floor ? std::sqrt(v) : 0.0;
  return values;
}

}  // namespace lilens
