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

#ifndef LILENS_TYPES_H_
#define LILENS_TYPES_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace lilens {

// One WordPiece-style subword. Subwords sharing `word_index` compose one
// surface word.
struct Token {
  std::string text;
  uint32_t word_index = 0;

  bool operator==(const Token&) const = default;
};

// A query or passage: tokens plus an n_tokens x dim row-major matrix of
// unit-normalized embeddings.
class EmbeddingSequence {
 public:
  EmbeddingSequence() = default;
  // Rows are normalized in place. Throws InputError on shape mismatch, on an
  // invalid word grouping, or on a row with norm < 1e-12.
  EmbeddingSequence(std::string id, std::vector<Token> tokens,
                    std::vector<float> matrix, size_t dim);

  const std::string& id() const { return id_; }
  const std::vector<Token>& tokens() const { return tokens_; }
  size_t size() const { return tokens_.size(); }
  size_t dim() const { return dim_; }
  std::span<const float> matrix() const { return matrix_; }
  std::span<const float> row(size_t i) const {
    return {matrix_.data() + i * dim_, dim_};
  }
  // Number of surface words (last word_index + 1).
  size_t num_words() const;
  // Query positions whose word_index equals `word`.
  std::vector<size_t> positions_of_word(uint32_t word) const;

 private:
  std::string id_;
  std::vector<Token> tokens_;
  std::vector<float> matrix_;
  size_t dim_ = 0;
};

// Immutable id-addressable collection of sequences with a common dimension.
class EmbeddingStore {
 public:
  EmbeddingStore() = default;
  // Throws InputError on duplicate ids or mixed dimensions.
  EmbeddingStore(size_t dim, std::vector<EmbeddingSequence> sequences);

  size_t dim() const { return dim_; }
  size_t size() const { return sequences_.size(); }
  bool empty() const { return sequences_.empty(); }
  const std::vector<EmbeddingSequence>& sequences() const {
    return sequences_;
  }
  const EmbeddingSequence& at(size_t i) const { return sequences_[i]; }
  // nullptr when absent.
  const EmbeddingSequence* Find(std::string_view id) const;
  std::optional<size_t> IndexOf(std::string_view id) const;

 private:
  size_t dim_ = 0;
  std::vector<EmbeddingSequence> sequences_;
  std::unordered_map<std::string, size_t> index_;
};

// S_q: candidate passages for one query, in first-stage rank order.
struct CandidateSet {
  std::string query_id;
  std::vector<std::string> doc_ids;
  std::vector<double> first_stage_scores;  // empty or parallel to doc_ids
};

inline constexpr size_t kMaxCandidates = 1000;
inline constexpr size_t kMaxSequenceTokens = 512;

}  // namespace lilens

#endif  // LILENS_TYPES_H_
