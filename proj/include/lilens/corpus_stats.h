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

#ifndef LILENS_CORPUS_STATS_H_
#define LILENS_CORPUS_STATS_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lilens/types.h"

namespace lilens {

enum class Granularity { kSubword, kWord };

std::string_view GranularityName(Granularity g);

// Document frequencies at subword and word granularity. Ordered maps keep
// serialization deterministic.
struct CorpusStats {
  uint64_t n_docs = 0;
  std::map<std::string, uint64_t, std::less<>> df_subword;
  std::map<std::string, uint64_t, std::less<>> df_word;

  const std::map<std::string, uint64_t, std::less<>>& df(Granularity g) const {
    return g == Granularity::kSubword ? df_subword : df_word;
  }
};

// Continuation prefix stripped when subwords are joined into words.
inline constexpr std::string_view kContinuationMarker = "##";

// Surface words of a token list, indexed by word_index. Pure function of the
// tokens.
std::vector<std::string> ReconstructWords(std::span<const Token> tokens);

// Throws InputError on an empty corpus.
CorpusStats ComputeCorpusStats(std::span<const std::vector<Token>> corpus);
CorpusStats ComputeCorpusStats(const EmbeddingStore& docs);

// ln(N / max(df, 1)). Throws InputError for a term missing from the map.
double Idf(const CorpusStats& stats, std::string_view term, Granularity g);
std::optional<double> TryIdf(const CorpusStats& stats, std::string_view term,
                             Granularity g);

// Canonical single-file TSV: "#N <count>", then "term\tdf\tgranularity".
void WriteCorpusStats(const CorpusStats& stats, const std::string& path);
CorpusStats ReadCorpusStats(const std::string& path);

}  // namespace lilens

#endif  // LILENS_CORPUS_STATS_H_
