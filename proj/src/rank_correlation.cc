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

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string_view>
#include <unordered_map>

#include "lilens/errors.h"

namespace lilens {
namespace {

// Fenwick tree over 0-based positions.
class PrefixCounter {
 public:
  explicit PrefixCounter(size_t n) : tree_(n + 1, 0) {}
  void Add(size_t pos) {
    for (size_t i = pos + 1; i < tree_.size(); i += i & (~i + 1)) ++tree_[i];
  }
  // Count of added positions < pos.
  size_t CountBelow(size_t pos) const {
    size_t total = 0;
    for (size_t i = pos; i > 0; i -= i & (~i + 1)) total += tree_[i];
    return total;
  }

 private:
  std::vector<size_t> tree_;
};

// Reference rank of each candidate item, in candidate order.
std::vector<size_t> ReferenceRanks(std::span<const std::string> reference,
                                   std::span<const std::string> candidate) {
  if (reference.size() < 2) {
    throw InputError("rank correlation needs at least 2 items");
  }
  if (reference.size() != candidate.size()) {
    throw InputError("rankings have different lengths");
  }
  std::unordered_map<std::string_view, size_t> pos;
  pos.reserve(reference.size());
  for (size_t i = 0; i < reference.size(); ++i) {
    if (!pos.emplace(reference[i], i).second) {
      throw InputError("duplicate item '" + reference[i] + "' in ranking");
    }
  }
  std::vector<size_t> ranks;
  ranks.reserve(candidate.size());
  std::vector<bool> used(reference.size(), false);
  for (const auto& item : candidate) {
    auto it = pos.find(item);
    if (it == pos.end() || used[it->second]) {
      throw InputError("item-set mismatch at '" + item + "'");
    }
    used[it->second] = true;
    ranks.push_back(it->second);
  }
  return ranks;
}

}  // namespace

double TauAp(std::span<const std::string> reference,
             std::span<const std::string> candidate) {
  const auto ranks = ReferenceRanks(reference, candidate);
  const size_t n = ranks.size();
  PrefixCounter seen(n);
  seen.Add(ranks[0]);
  double sum = 0.0;
  for (size_t i = 1; i < n; ++i) {
    // Items above candidate position i that the reference ranks higher.
    const size_t correct = seen.CountBelow(ranks[i]);
    sum += static_cast<double>(correct) / static_cast<double>(i);
    seen.Add(ranks[i]);
  }
  return 2.0 * sum / static_cast<double>(n - 1) - 1.0;
}

double TauApSymmetric(std::span<const std::string> reference,
                      std::span<const std::string> candidate) {
  return 0.5 * (TauAp(reference, candidate) + TauAp(candidate, reference));
}

double TauAp(std::span<const std::string> reference,
             std::span<const std::string> candidate, TauApMode mode) {
  return mode == TauApMode::kSymmetric ? TauApSymmetric(reference, candidate)
                                       : TauAp(reference, candidate);
}

double KendallTau(std::span<const std::string> reference,
                  std::span<const std::string> candidate) {
  const auto ranks = ReferenceRanks(reference, candidate);
  const size_t n = ranks.size();
  PrefixCounter seen(n);
  size_t concordant = 0;
  for (size_t i = 0; i < n; ++i) {
    concordant += seen.CountBelow(ranks[i]);
    seen.Add(ranks[i]);
  }
  const double pairs = 0.5 * static_cast<double>(n) * (n - 1);
  const double discordant = pairs - static_cast<double>(concordant);
  return (static_cast<double>(concordant) - discordant) / pairs;
}

double Pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    throw std::invalid_argument("pearson: length mismatch");
  }
  const size_t n = xs.size();
  if (n < 2) throw std::invalid_argument("pearson: need at least 2 points");
  double mean_x = 0.0, mean_y = 0.0;
  for (size_t i = 0; i < n; ++i) {
    mean_x += xs[i];
    mean_y += ys[i];
  }
  mean_x /= static_cast<double>(n);
  mean_y /= static_cast<double>(n);
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double dx = xs[i] - mean_x;
    const double dy = ys[i] - mean_y;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx <= 0.0 || syy <= 0.0) {
    throw std::invalid_argument("pearson: zero variance");
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

}  // namespace lilens
