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

#ifndef LILENS_SCORING_H_
#define LILENS_SCORING_H_

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lilens/types.h"

namespace lilens {

// Late-interaction relevance:
//   s(q, d) = sum_i max_j cos(E_q_i, E_d_j) = sum_i C*_i
// Rows are unit-normalized at load, so the cosine is a dot product.
// Dot products and sums are carried in double.

struct TokenMatch {
  double c_max = 0.0;     // C*_i
  size_t j_star = 0;      // first document token attaining c_max
};

// Per query token: best cosine and the matched document token.
struct ArgmaxTrace {
  std::vector<TokenMatch> matches;

  size_t size() const { return matches.size(); }
  const TokenMatch& operator[](size_t i) const { return matches[i]; }
  double Sum() const;
};

// Sorted by score descending, doc_id ascending on exact ties.
struct Ranking {
  std::string query_id;
  std::vector<std::pair<std::string, double>> entries;

  std::vector<std::string> DocIds() const;
};

// Sorted, deduplicated query token positions whose contributions are dropped.
class TokenMask {
 public:
  TokenMask() = default;
  // Throws InputError if any position >= n_query_tokens.
  TokenMask(std::vector<size_t> positions, size_t n_query_tokens);

  bool empty() const { return positions_.empty(); }
  const std::vector<size_t>& positions() const { return positions_; }
  bool Contains(size_t i) const;

 private:
  std::vector<size_t> positions_;
};

double Dot(std::span<const float> a, std::span<const float> b);

// Element j is cos(q_tok, doc_j). Throws InputError on dimension mismatch.
std::vector<double> CosineRow(std::span<const float> q_tok,
                              const EmbeddingSequence& doc);

ArgmaxTrace MaxSim(const EmbeddingSequence& query,
                   const EmbeddingSequence& doc);

double Score(const EmbeddingSequence& query, const EmbeddingSequence& doc);

// Sum of C*_i over i not in the mask. Argmaxes are not recomputed.
double MaskedScore(const EmbeddingSequence& query,
                   const EmbeddingSequence& doc, const TokenMask& mask);
double MaskedScore(const ArgmaxTrace& trace, const TokenMask& mask);

// Orders (doc_id, score) pairs by the ranking contract.
Ranking MakeRanking(std::string query_id,
                    std::vector<std::pair<std::string, double>> scored);

struct RerankOptions {
  size_t threads = 1;
};

// Scores every candidate with MaskedScore and sorts. Throws InputError when a
// candidate doc id is missing from `docs`.
Ranking Rerank(const EmbeddingSequence& query, const CandidateSet& candidates,
               const EmbeddingStore& docs, const TokenMask& mask = {},
               const RerankOptions& options = {});

// Traces for every candidate, in candidate order.
std::vector<ArgmaxTrace> TraceCandidates(const EmbeddingSequence& query,
                                         const CandidateSet& candidates,
                                         const EmbeddingStore& docs,
                                         size_t threads = 1);

// Ranking from precomputed traces (parallel to candidates.doc_ids).
Ranking RankFromTraces(const CandidateSet& candidates,
                       std::span<const ArgmaxTrace> traces,
                       const TokenMask& mask = {});

}  // namespace lilens

#endif  // LILENS_SCORING_H_
