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

#ifndef LILENS_EMBEDDING_IO_H_
#define LILENS_EMBEDDING_IO_H_

#include <iosfwd>
#include <string>

#include "lilens/types.h"

namespace lilens {

// LIEB layout (little-endian):
//   "LIEB" | u16 version=1 | u16 flags | u32 dim | u64 seq_count
//   per sequence: u16 id_len, id | u32 n_tokens
//                 per token: u16 tok_len, tok | u32 word_index
//                 n_tokens * dim f32, row-major
inline constexpr char kLiebMagic[4] = {'L', 'I', 'E', 'B'};
inline constexpr uint16_t kLiebVersion = 1;
// flags bit 0: the exporter lowercased the text.
inline constexpr uint16_t kLiebFlagLowercased = 1;

struct LoadOptions {
  size_t max_tokens = kMaxSequenceTokens;
};

EmbeddingStore ReadEmbeddings(std::istream& in, const LoadOptions& options = {});
EmbeddingStore LoadEmbeddings(const std::string& path,
                              const LoadOptions& options = {});

void WriteEmbeddings(const EmbeddingStore& store, std::ostream& out,
                     uint16_t flags = 0);
void WriteEmbeddings(const EmbeddingStore& store, const std::string& path,
                     uint16_t flags = 0);

}  // namespace lilens

#endif  // LILENS_EMBEDDING_IO_H_
