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

#ifndef LILENS_SYNTH_H_
#define LILENS_SYNTH_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "lilens/corpus_stats.h"
#include "lilens/types.h"

namespace lilens {

// Synthetic late-interaction corpus in which embedding concentration grows
// with rarity:
//
//  * Words are drawn from a Zipf distribution over a fixed vocabulary. The
//    rarest third of the vocabulary is split into a shared prefix subword
//    and a "##"-continuation subword.
//  * Every subword t owns a random unit direction u_t and a concentration
//    k_t in [kMinConcentration, kMaxConcentration], linear in its subword
//    IDF over the generated documents.
//  * An occurrence of t in sequence s is normalize(k_t * u_t + (1 - k_t) * g)
//    with g = w * c_s + (1 - w) * n: c_s is a per-sequence context direction,
//    n fresh isotropic noise (both of unit expected norm) and w the context
//    weight. Rare terms therefore keep one direction; frequent terms follow
//    their context.
//  * Each query samples content words from a seed document plus frequent
//    function words. Its candidate set is a bag-of-words first stage over
//    the documents (score = sum of IDF of shared words), topped up with
//    random documents.
struct SynthConfig {
  size_t n_docs = 1500;
  size_t n_queries = 120;
  size_t vocab_size = 400;
  size_t dim = 32;
  size_t min_doc_words = 20;
  size_t max_doc_words = 50;
  size_t content_words_per_query = 3;
  size_t function_words_per_query = 2;
  size_t candidates_per_query = 40;
  double zipf_exponent = 1.0;
  double context_weight = 0.5;
  uint64_t seed = 20210413;
};

inline constexpr double kMinConcentration = 0.15;
inline constexpr double kMaxConcentration = 0.95;

struct SynthCorpus {
  EmbeddingStore queries;
  EmbeddingStore docs;
  std::vector<CandidateSet> runs;
  CorpusStats stats;
};

SynthCorpus GenerateSynthCorpus(const SynthConfig& config);

// Writes queries.lieb, docs.lieb, run.txt and stats.tsv into `dir`.
void WriteSynthCorpus(const SynthCorpus& corpus, const std::string& dir);

}  // namespace lilens

#endif  // LILENS_SYNTH_H_
