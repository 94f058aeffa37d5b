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

#include "lilens/rank_correlation.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>

#include "lilens/errors.h"

namespace lilens {
namespace {

std::vector<std::string> Items(size_t n) {
  std::vector<std::string> v;
  for (size_t i = 0; i < n; ++i) v.push_back("i" + std::to_string(i));
  return v;
}

// Literal O(N^2) evaluation: for each candidate position i >= 2, count items
// above it in the candidate that the reference also ranks above it.
double TauApOracle(const std::vector<std::string>& reference,
                   const std::vector<std::string>& candidate) {
  std::map<std::string, size_t> ref_pos;
  for (size_t i = 0; i < reference.size(); ++i) ref_pos[reference[i]] = i;
  const size_t n = candidate.size();
  double sum = 0.0;
  for (size_t i = 1; i < n; ++i) {
    size_t c = 0;
    for (size_t j = 0; j < i; ++j) {
      if (ref_pos[candidate[j]] < ref_pos[candidate[i]]) ++c;
    }
    sum += static_cast<double>(c) / static_cast<double>(i);
  }
  return 2.0 / static_cast<double>(n - 1) * sum - 1.0;
}

double KendallOracle(const std::vector<std::string>& a,
                     const std::vector<std::string>& b) {
  std::map<std::string, size_t> pa, pb;
  for (size_t i = 0; i < a.size(); ++i) pa[a[i]] = i;
  for (size_t i = 0; i < b.size(); ++i) pb[b[i]] = i;
  long long conc = 0, disc = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    for (size_t j = i + 1; j < a.size(); ++j) {
      const bool same = (pa[a[i]] < pa[a[j]]) == (pb[a[i]] < pb[a[j]]);
      (same ? conc : disc)++;
    }
  }
  return static_cast<double>(conc - disc) / static_cast<double>(conc + disc);
}

TEST(TauApTest, IdentityAndReversal) {
  std::mt19937_64 rng(1);
  for (size_t n = 2; n <= 200; ++n) {
    auto ref = Items(n);
    std::shuffle(ref.begin(), ref.end(), rng);
    auto rev = ref;
    std::reverse(rev.begin(), rev.end());
    EXPECT_DOUBLE_EQ(TauAp(ref, ref), 1.0) << n;
    EXPECT_NEAR(TauAp(ref, rev), -1.0, 1e-12) << n;
  }
}

TEST(TauApTest, SwapOfTopTwoOutOfThree) {
  const std::vector<std::string> ref = {"A", "B", "C"};
  const std::vector<std::string> cand = {"B", "A", "C"};
  EXPECT_NEAR(TauAp(ref, cand), 0.0, 1e-15);
}

TEST(TauApTest, MatchesLiteralDefinition) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 400; ++trial) {
    const size_t n = 2 + rng() % 99;
    auto ref = Items(n);
    auto cand = ref;
    std::shuffle(ref.begin(), ref.end(), rng);
    std::shuffle(cand.begin(), cand.end(), rng);
    const double tau = TauAp(ref, cand);
    EXPECT_NEAR(tau, TauApOracle(ref, cand), 1e-12);
    EXPECT_GE(tau, -1.0 - 1e-12);
    EXPECT_LE(tau, 1.0 + 1e-12);
  }
}

TEST(TauApTest, TopDisplacementsCostMore) {
  // Moving an item 3 places within the top changes tau_ap more than the same
  // move at the bottom.
  const auto ref = Items(20);
  auto top = ref;
  std::rotate(top.begin(), top.begin() + 3, top.begin() + 4);  // i3 to front
  auto bottom = ref;
  std::rotate(bottom.begin() + 16, bottom.begin() + 19, bottom.end());
  EXPECT_LT(TauAp(ref, top), TauAp(ref, bottom));
  // Kendall tau does not distinguish the two.
  EXPECT_DOUBLE_EQ(KendallTau(ref, top), KendallTau(ref, bottom));
}

TEST(TauApTest, SymmetricModeAveragesBothDirections) {
  std::mt19937_64 rng(9);
  auto ref = Items(30);
  auto cand = ref;
  std::shuffle(cand.begin(), cand.end(), rng);
  EXPECT_DOUBLE_EQ(TauAp(ref, cand, TauApMode::kSymmetric),
                   0.5 * (TauAp(ref, cand) + TauAp(cand, ref)));
  EXPECT_DOUBLE_EQ(TauAp(ref, cand, TauApMode::kAsymmetric),
                   TauAp(ref, cand));
}

TEST(TauApTest, RejectsInvalidPairs) {
  const std::vector<std::string> one = {"a"};
  EXPECT_THROW(TauAp(one, one), InputError);
  const std::vector<std::string> ab = {"a", "b"};
  const std::vector<std::string> ac = {"a", "c"};
  const std::vector<std::string> aa = {"a", "a"};
  const std::vector<std::string> abc = {"a", "b", "c"};
  EXPECT_THROW(TauAp(ab, ac), InputError);
  EXPECT_THROW(TauAp(ab, aa), InputError);
  EXPECT_THROW(TauAp(ab, abc), InputError);
  EXPECT_THROW(KendallTau(ab, ac), InputError);
}

TEST(KendallTauTest, KnownValues) {
  const auto ref = Items(3);
  EXPECT_DOUBLE_EQ(KendallTau(ref, ref), 1.0);
  const std::vector<std::string> swapped = {"i1", "i0", "i2"};
  EXPECT_NEAR(KendallTau(ref, swapped), 1.0 / 3.0, 1e-15);
}

TEST(KendallTauTest, MatchesPairCountingAndIsSymmetric) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    const size_t n = 2 + rng() % 49;
    auto a = Items(n);
    auto b = a;
    std::shuffle(a.begin(), a.end(), rng);
    std::shuffle(b.begin(), b.end(), rng);
    EXPECT_DOUBLE_EQ(KendallTau(a, b), KendallOracle(a, b));
    EXPECT_DOUBLE_EQ(KendallTau(a, b), KendallTau(b, a));
  }
}

TEST(PearsonTest, PerfectLinearRelations) {
  const std::vector<double> xs = {1, 2, 3, 4, 5.5};
  std::vector<double> up, down;
  for (double x : xs) {
    up.push_back(2 * x + 1);
    down.push_back(-x);
  }
  EXPECT_NEAR(Pearson(xs, up), 1.0, 1e-15);
  EXPECT_NEAR(Pearson(xs, down), -1.0, 1e-15);
}

TEST(PearsonTest, MatchesDirectFormula) {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> xs(100), ys(100);
    for (size_t i = 0; i < 100; ++i) {
      xs[i] = normal(rng) * 3 + 10;
      ys[i] = 0.4 * xs[i] + normal(rng);
    }
    // Oracle: raw-moment formula in long double.
    long double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    for (size_t i = 0; i < 100; ++i) {
      sx += xs[i];
      sy += ys[i];
      sxx += (long double)xs[i] * xs[i];
      syy += (long double)ys[i] * ys[i];
      sxy += (long double)xs[i] * ys[i];
    }
    const long double n = 100;
    const long double r = (n * sxy - sx * sy) /
                          std::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy));
    EXPECT_NEAR(Pearson(xs, ys), static_cast<double>(r), 1e-10);
  }
}

TEST(PearsonTest, RejectsDegenerateInputs) {
  const std::vector<double> xs = {1, 2, 3};
  const std::vector<double> flat = {4, 4, 4};
  const std::vector<double> short_ys = {1, 2};
  const std::vector<double> one = {1};
  EXPECT_THROW(Pearson(xs, flat), std::invalid_argument);
  EXPECT_THROW(Pearson(xs, short_ys), std::invalid_argument);
  EXPECT_THROW(Pearson(one, one), std::invalid_argument);
}

}  // namespace
}  // namespace lilens
