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

#ifndef LILENS_RANK_CORRELATION_H_
#define LILENS_RANK_CORRELATION_H_

#include <span>
#include <string>
#include <vector>

namespace lilens {

// AP rank correlation of `candidate` against `reference`:
//
//   tau_ap = 2/(N-1) * sum_{i=2..N} C(i)/(i-1) - 1
//
// where i walks the candidate ranking and C(i) counts the items above
// position i in the candidate that the reference also places above the item
// at position i. Both inputs must be permutations of the same N >= 2 items.
// Not symmetric in its arguments.
double TauAp(std::span<const std::string> reference,
             std::span<const std::string> candidate);

// Mean of both argument orders.
double TauApSymmetric(std::span<const std::string> reference,
                      std::span<const std::string> candidate);

enum class TauApMode { kAsymmetric, kSymmetric };

double TauAp(std::span<const std::string> reference,
             std::span<const std::string> candidate, TauApMode mode);

// (concordant - discordant) / (N choose 2).
double KendallTau(std::span<const std::string> reference,
                  std::span<const std::string> candidate);

// Sample Pearson correlation. Throws std::invalid_argument on length mismatch,
// fewer than two points, or zero variance.
double Pearson(std::span<const double> xs, std::span<const double> ys);

}  // namespace lilens

#endif  // LILENS_RANK_CORRELATION_H_
