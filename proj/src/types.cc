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

#include "lilens/types.h"

#include <cmath>
#include <string>
#include <utility>

#include "lilens/errors.h"

namespace lilens {

EmbeddingSequence::EmbeddingSequence(std::string id, std::vector<Token> tokens,
                                     std::vector<float> matrix, size_t dim)
    : id_(std::move(id)),
      tokens_(std::move(tokens)),
      matrix_(std::move(matrix)),
      dim_(dim) {
  if (tokens_.empty()) {
    throw InputError("sequence '" + id_ + "' has no tokens");
  }
  if (dim_ == 0 || matrix_.size() != tokens_.size() * dim_) {
    throw InputError("sequence '" + id_ + "': matrix size does not match " +
                     std::to_string(tokens_.size()) + " tokens x dim " +
                     std::to_string(dim_));
  }
  if (tokens_.front().word_index != 0) {
    throw InputError("sequence '" + id_ + "': first word_index must be 0");
  }
  for (size_t i = 1; i < tokens_.size(); ++i) {
    const uint32_t step = tokens_[i].word_index - tokens_[i - 1].word_index;
    if (tokens_[i].word_index < tokens_[i - 1].word_index || step > 1) {
      throw InputError("sequence '" + id_ + "': word_index at token " +
                       std::to_string(i) + " must step by 0 or 1");
    }
  }
  for (size_t i = 0; i < tokens_.size(); ++i) {
    float* row = matrix_.data() + i * dim_;
    double norm_sq = 0.0;
    for (size_t k = 0; k < dim_; ++k) {
      if (!std::isfinite(row[k])) {
        throw InputError("sequence '" + id_ + "': non-finite value in row " +
                         std::to_string(i));
      }
      norm_sq += static_cast<double>(row[k]) * row[k];
    }
    const double norm = std::sqrt(norm_sq);
    if (norm < 1e-12) {
      throw InputError("sequence '" + id_ + "': zero-norm embedding row " +
                       std::to_string(i));
    }
    for (size_t k = 0; k < dim_; ++k) {
      row[k] = static_cast<float>(row[k] / norm);
    }
  }
}

size_t EmbeddingSequence::num_words() const {
  return tokens_.empty() ? 0 : tokens_.back().word_index + 1;
}

std::vector<size_t> EmbeddingSequence::positions_of_word(uint32_t word) const {
  std::vector<size_t> positions;
  for (size_t i = 0; i < tokens_.size(); ++i) {
    if (tokens_[i].word_index == word) positions.push_back(i);
  }
  return positions;
}

EmbeddingStore::EmbeddingStore(size_t dim,
                               std::vector<EmbeddingSequence> sequences)
    : dim_(dim), sequences_(std::move(sequences)) {
  index_.reserve(sequences_.size());
  for (size_t i = 0; i < sequences_.size(); ++i) {
    const auto& seq = sequences_[i];
    if (seq.dim() != dim_) {
      throw InputError("dimension mismatch: sequence '" + seq.id() +
                       "' has dim " + std::to_string(seq.dim()) +
                       ", store has dim " + std::to_string(dim_));
    }
    if (!index_.emplace(seq.id(), i).second) {
      throw InputError("duplicate sequence id '" + seq.id() + "'");
    }
  }
}

const EmbeddingSequence* EmbeddingStore::Find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  return it == index_.end() ? nullptr : &sequences_[it->second];
}

std::optional<size_t> EmbeddingStore::IndexOf(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

}  // namespace lilens
