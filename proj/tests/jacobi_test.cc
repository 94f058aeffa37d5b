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

#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>

namespace lilens {
namespace {

TEST(SymmetricEigenvaluesTest, TwoByTwoAnalytic) {
  // [[2, 1], [1, 2]] has eigenvalues 3 and 1.
  const auto ev = SymmetricEigenvalues({2, 1, 1, 2}, 2);
  ASSERT_EQ(ev.size(), 2u);
  EXPECT_NEAR(ev[0], 3.0, 1e-14);
  EXPECT_NEAR(ev[1], 1.0, 1e-14);
}

TEST(SymmetricEigenvaluesTest, DiagonalIsSorted) {
  const auto ev = SymmetricEigenvalues({1, 0, 0, 0, 5, 0, 0, 0, -2}, 3);
  EXPECT_EQ(ev, (std::vector<double>{5, 1, -2}));
}

TEST(SymmetricEigenvaluesTest, PascalMatrixMatchesEigen) {
  // Pascal matrix: symmetric positive definite, widely spread spectrum.
  const std::vector<double> m = {1, 1, 1,  1, 1, 2, 3,  4,
                                 1, 3, 6, 10, 1, 4, 10, 20};
  const auto ev = SymmetricEigenvalues(m, 4);
  Eigen::Matrix4d a = Eigen::Map<const Eigen::Matrix4d>(m.data());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> solver(a);
  for (int i = 0; i < 4; ++i) {
    EXPECT_NEAR(ev[i], solver.eigenvalues()[3 - i], 1e-12 * ev[0]);
  }
  EXPECT_NEAR(ev[0] * ev[1] * ev[2] * ev[3], 1.0, 1e-10);  // det = 1
}

TEST(SymmetricEigenvaluesTest, RejectsBadShape) {
  EXPECT_THROW(SymmetricEigenvalues({1, 2, 3}, 2), std::invalid_argument);
}

std::vector<double> EigenSingularValues(const std::vector<float>& m,
                                        size_t rows, size_t cols) {
  Eigen::MatrixXd a(rows, cols);
  for (size_t r = 0; r < rows; ++r) {
    for (size_t c = 0; c < cols; ++c) a(r, c) = m[r * cols + c];
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const auto& s = svd.singularValues();
  return std::vector<double>(s.data(), s.data() + s.size());
}

TEST(SingularValuesTest, MatchesIterativeSvdOnRandomMatrices) {
  std::mt19937_64 rng(99);
  std::normal_distribution<float> normal;
  const std::pair<size_t, size_t> shapes[] = {
      {200, 64}, {64, 200}, {50, 16}, {7, 3}, {3, 7}, {1, 5}, {5, 1}};
  for (const auto& [rows, cols] : shapes) {
    std::vector<float> m(rows * cols);
    for (auto& x : m) x = normal(rng);
    const auto got = SingularValues(m, rows, cols);
    const auto want = EigenSingularValues(m, rows, cols);
    ASSERT_EQ(got.size(), want.size());
    for (size_t k = 0; k < got.size(); ++k) {
      EXPECT_NEAR(got[k], want[k], 1e-5 * want[k])
          << rows << "x" << cols << " k=" << k;
    }
    EXPECT_TRUE(std::is_sorted(got.rbegin(), got.rend()));
  }
}

TEST(SingularValuesTest, RankOneHasSingleNonzeroValue) {
  const std::vector<float> v = {0.6f, 0.0f, -0.8f, 0.0f};
  std::vector<float> m;
  for (int r = 0; r < 9; ++r) m.insert(m.end(), v.begin(), v.end());
  const auto s = SingularValues(m, 9, 4);
  ASSERT_EQ(s.size(), 4u);
  EXPECT_NEAR(s[0], 3.0, 1e-6);
  for (size_t k = 1; k < s.size(); ++k) EXPECT_EQ(s[k], 0.0);
}

}  // namespace
}  // namespace lilens
