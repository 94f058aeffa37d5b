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

#ifndef LILENS_TESTS_TEST_UTIL_H_
#define LILENS_TESTS_TEST_UTIL_H_

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "lilens/types.h"

namespace lilens::testing {

// One token per word, texts given.
inline std::vector<Token> Words(const std::vector<std::string>& texts) {
  std::vector<Token> tokens;
  for (size_t i = 0; i < texts.size(); ++i) {
    tokens.push_back({texts[i], static_cast<uint32_t>(i)});
  }
  return tokens;
}

inline std::vector<Token> Anon(size_t n) {
  std::vector<std::string> texts;
  for (size_t i = 0; i < n; ++i) texts.push_back("t" + std::to_string(i));
  return Words(texts);
}

inline EmbeddingSequence Seq(const std::string& id, std::vector<Token> tokens,
                             const std::vector<std::vector<float>>& rows) {
  std::vector<float> matrix;
  for (const auto& r : rows) matrix.insert(matrix.end(), r.begin(), r.end());
  const size_t dim = rows.empty() ? 0 : rows.front().size();
  return EmbeddingSequence(id, std::move(tokens), std::move(matrix), dim);
}

inline EmbeddingSequence Seq(const std::string& id,
                             const std::vector<std::vector<float>>& rows) {
  return Seq(id, Anon(rows.size()), rows);
}

inline std::vector<float> GaussianRows(size_t n, size_t dim,
                                       std::mt19937_64& rng) {
  std::normal_distribution<float> normal;
  std::vector<float> m(n * dim);
  for (auto& x : m) x = normal(rng);
  return m;
}

inline EmbeddingSequence RandomSeq(const std::string& id, size_t n, size_t dim,
                                   std::mt19937_64& rng) {
  return EmbeddingSequence(id, Anon(n), GaussianRows(n, dim, rng), dim);
}

}  // namespace lilens::testing

#endif  // LILENS_TESTS_TEST_UTIL_H_
