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

#ifndef LILENS_ANALYSIS_H_
#define LILENS_ANALYSIS_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lilens/corpus_stats.h"
#include "lilens/rank_correlation.h"
#include "lilens/scoring.h"
#include "lilens/types.h"

namespace lilens {

// Everything the analyses need about one query: its embeddings, its
// candidates, and the MaxSim trace against every candidate.
struct ScoredQuery {
  const EmbeddingSequence* query = nullptr;
  const CandidateSet* candidates = nullptr;
  // Parallel to candidates->doc_ids.
  std::vector<const EmbeddingSequence*> docs;
  std::vector<ArgmaxTrace> traces;
  Ranking original;  // unmasked ranking
};

// Resolves candidates and computes traces plus the unmasked ranking.
ScoredQuery ScoreQuery(const EmbeddingSequence& query,
                       const CandidateSet& candidates,
                       const EmbeddingStore& docs, size_t threads = 1);

// ---------------------------------------------------------------------------
// Masking-based term importance.

struct WordImportance {
  std::string query_id;
  uint32_t word_index = 0;
  std::string word;
  Ranking masked;
  double tau_ap = 0.0;
};

// Masks every query position of `word_index`, re-ranks S_q and compares the
// masked ranking (candidate) against the original one (reference). Throws
// InputError when |S_q| < 2 or the word does not exist.
WordImportance TermImportance(const ScoredQuery& scored, uint32_t word_index,
                              TauApMode mode = TauApMode::kAsymmetric);

// One result per word of the query.
std::vector<WordImportance> QueryImportance(
    const ScoredQuery& scored, TauApMode mode = TauApMode::kAsymmetric);

struct TermImportanceRow {
  std::string word;
  std::vector<std::pair<std::string, double>> per_query_tau_ap;
  double mean_tau_ap = 0.0;
  std::optional<double> idf_word;
  size_t n_queries() const { return per_query_tau_ap.size(); }
};

// Groups by surface word (lexicographic order) and averages tau_ap.
std::vector<TermImportanceRow> AggregateImportance(
    std::span<const WordImportance> results, const CorpusStats* stats);

// ---------------------------------------------------------------------------
// Exact vs. soft matching (Delta_ES).
//
//   Delta_ES(t) = mean_{(q,i): q_i = t} ( mean_{d: a*_i -> t} C*_i
//                                         - mean_{d: a*_i -/-> t} C*_i )

struct DeltaEsRow {
  std::string term;
  std::optional<double> delta_es;
  size_t n_pairs_used = 0;
  size_t n_pairs_skipped = 0;
  std::optional<double> idf;
};

// Pairs whose exact or soft side is empty are skipped and counted.
DeltaEsRow DeltaEsSubword(const std::string& term,
                          std::span<const ScoredQuery> queries);

// All distinct query subwords, lexicographic.
std::vector<DeltaEsRow> DeltaEsSubwords(std::span<const ScoredQuery> queries,
                                        const CorpusStats* stats);

struct WordDeltaEsRow {
  std::string word;
  std::vector<std::string> subwords;
  std::optional<double> delta_es;
  bool partial = false;  // some constituent subword was undefined
  size_t n_pairs_used = 0;
  size_t n_pairs_skipped = 0;
  std::optional<double> idf;
};

// Sum of the defined subword values; undefined when none is defined.
WordDeltaEsRow DeltaEsWord(const std::string& word,
                           std::span<const std::string> subwords,
                           std::span<const DeltaEsRow> subword_rows);

// Every distinct query word, lexicographic.
std::vector<WordDeltaEsRow> DeltaEsWords(std::span<const ScoredQuery> queries,
                                         std::span<const DeltaEsRow> subword_rows,
                                         const CorpusStats* stats);

// ---------------------------------------------------------------------------
// Match statistics.

inline constexpr size_t kTopMatches = 10;

struct MatchStatsRow {
  std::string query_id;
  size_t position = 0;
  std::string token;
  double exact_match_freq = 0.0;
  double other_query_term_freq = 0.0;
  // Sorted by frequency descending, token ascending.
  std::vector<std::pair<std::string, double>> top_matches;
  size_t n_docs = 0;  // |S_q|
};

std::vector<MatchStatsRow> MatchStats(const ScoredQuery& scored,
                                      size_t top_k = kTopMatches);

// ---------------------------------------------------------------------------
// Spectral concentration of contextual embeddings.

struct SpectralRow {
  std::string term;
  size_t m = 0;  // occurrences stacked
  std::vector<double> singular_values;
  double ratio = 0.0;  // sigma_1 / sum_k sigma_k
  std::optional<double> idf_subword;
};

// sigma_1 / sum sigma over the rows (no mean-centering). Throws InputError on
// an empty matrix.
SpectralRow SpectralFromRows(std::string term, std::span<const float> rows,
                             size_t m, size_t dim);

inline constexpr size_t kDefaultSpectralCap = 50000;

struct SpectralOptions {
  size_t cap = kDefaultSpectralCap;
  uint64_t seed = 0;
  size_t threads = 1;
};

// Document-side occurrence pool of each query subword: every (doc, position)
// of a document that appears in at least one candidate set. Pools larger than
// options.cap are reservoir-sampled with a per-term seed derived from
// options.seed. Terms with no occurrence are omitted.
std::vector<SpectralRow> SpectralRatios(std::span<const ScoredQuery> queries,
                                        const EmbeddingStore& docs,
                                        const CorpusStats* stats,
                                        const SpectralOptions& options = {});

}  // namespace lilens

#endif  // LILENS_ANALYSIS_H_
