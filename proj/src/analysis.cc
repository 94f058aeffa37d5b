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

#include "lilens/analysis.h"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "lilens/errors.h"
#include "lilens/jacobi.h"
#include "lilens/parallel.h"

namespace lilens {

ScoredQuery ScoreQuery(const EmbeddingSequence& query,
                       const CandidateSet& candidates,
                       const EmbeddingStore& docs, size_t threads) {
  ScoredQuery scored;
  scored.query = &query;
  scored.candidates = &candidates;
  scored.docs.reserve(candidates.doc_ids.size());
  for (const auto& id : candidates.doc_ids) {
    const EmbeddingSequence* doc = docs.Find(id);
    if (doc == nullptr) {
      throw InputError("query '" + candidates.query_id +
                       "': unresolvable doc id '" + id + "'");
    }
    scored.docs.push_back(doc);
  }
  scored.traces = TraceCandidates(query, candidates, docs, threads);
  scored.original = RankFromTraces(candidates, scored.traces);
  return scored;
}

// ---------------------------------------------------------------------------

WordImportance TermImportance(const ScoredQuery& scored, uint32_t word_index,
                              TauApMode mode) {
  const EmbeddingSequence& query = *scored.query;
  if (word_index >= query.num_words()) {
    throw InputError("query '" + query.id() + "' has no word " +
                     std::to_string(word_index));
  }
  if (scored.traces.size() < 2) {
    throw InputError("query '" + query.id() +
                     "': tau_ap needs at least 2 candidates");
  }
  WordImportance result;
  result.query_id = query.id();
  result.word_index = word_index;
  result.word = ReconstructWords(query.tokens())[word_index];
  const TokenMask mask(query.positions_of_word(word_index), query.size());
  result.masked = RankFromTraces(*scored.candidates, scored.traces, mask);
  const auto reference = scored.original.DocIds();
  const auto candidate = result.masked.DocIds();
  result.tau_ap = TauAp(reference, candidate, mode);
  return result;
}

std::vector<WordImportance> QueryImportance(const ScoredQuery& scored,
                                            TauApMode mode) {
  std::vector<WordImportance> results;
  const size_t n_words = scored.query->num_words();
  results.reserve(n_words);
  for (uint32_t w = 0; w < n_words; ++w) {
    results.push_back(TermImportance(scored, w, mode));
  }
  return results;
}

std::vector<TermImportanceRow> AggregateImportance(
    std::span<const WordImportance> results, const CorpusStats* stats) {
  std::map<std::string, TermImportanceRow> by_word;
  for (const auto& r : results) {
    auto& row = by_word[r.word];
    row.word = r.word;
    row.per_query_tau_ap.emplace_back(r.query_id, r.tau_ap);
  }
  std::vector<TermImportanceRow> rows;
  rows.reserve(by_word.size());
  for (auto& [word, row] : by_word) {
    double sum = 0.0;
    for (const auto& [qid, tau] : row.per_query_tau_ap) sum += tau;
    row.mean_tau_ap = sum / static_cast<double>(row.per_query_tau_ap.size());
    if (stats != nullptr) row.idf_word = TryIdf(*stats, word, Granularity::kWord);
    rows.push_back(std::move(row));
  }
  return rows;
}

// ---------------------------------------------------------------------------

namespace {

// Inner two-mean difference of one (query, position) pair; nullopt when the
// exact or the soft side is empty.
std::optional<double> PairDeltaEs(const ScoredQuery& scored, size_t i) {
  const std::string& term = scored.query->tokens()[i].text;
  double exact_sum = 0.0, soft_sum = 0.0;
  size_t exact_n = 0, soft_n = 0;
  for (size_t k = 0; k < scored.traces.size(); ++k) {
    const TokenMatch& m = scored.traces[k][i];
    if (scored.docs[k]->tokens()[m.j_star].text == term) {
      exact_sum += m.c_max;
      ++exact_n;
    } else {
      soft_sum += m.c_max;
      ++soft_n;
    }
  }
  if (exact_n == 0 || soft_n == 0) return std::nullopt;
  return exact_sum / static_cast<double>(exact_n) -
         soft_sum / static_cast<double>(soft_n);
}

struct DeltaAccumulator {
  double sum = 0.0;
  size_t used = 0;
  size_t skipped = 0;

  void Add(std::optional<double> v) {
    if (v) {
      sum += *v;
      ++used;
    } else {
      ++skipped;
    }
  }
  DeltaEsRow ToRow(std::string term) const {
    DeltaEsRow row;
    row.term = std::move(term);
    row.n_pairs_used = used;
    row.n_pairs_skipped = skipped;
    if (used > 0) row.delta_es = sum / static_cast<double>(used);
    return row;
  }
};

}  // namespace

DeltaEsRow DeltaEsSubword(const std::string& term,
                          std::span<const ScoredQuery> queries) {
  DeltaAccumulator acc;
  for (const auto& scored : queries) {
    const auto& tokens = scored.query->tokens();
    for (size_t i = 0; i < tokens.size(); ++i) {
      if (tokens[i].text == term) acc.Add(PairDeltaEs(scored, i));
    }
  }
  return acc.ToRow(term);
}

std::vector<DeltaEsRow> DeltaEsSubwords(std::span<const ScoredQuery> queries,
                                        const CorpusStats* stats) {
  std::map<std::string, DeltaAccumulator> by_term;
  for (const auto& scored : queries) {
    const auto& tokens = scored.query->tokens();
    for (size_t i = 0; i < tokens.size(); ++i) {
      by_term[tokens[i].text].Add(PairDeltaEs(scored, i));
    }
  }
  std::vector<DeltaEsRow> rows;
  rows.reserve(by_term.size());
  for (const auto& [term, acc] : by_term) {
    rows.push_back(acc.ToRow(term));
    if (stats != nullptr) {
      rows.back().idf = TryIdf(*stats, term, Granularity::kSubword);
    }
  }
  return rows;
}

WordDeltaEsRow DeltaEsWord(const std::string& word,
                           std::span<const std::string> subwords,
                           std::span<const DeltaEsRow> subword_rows) {
  WordDeltaEsRow row;
  row.word = word;
  row.subwords.assign(subwords.begin(), subwords.end());
  bool any_defined = false;
  double sum = 0.0;
  for (const auto& sub : subwords) {
    auto it = std::find_if(subword_rows.begin(), subword_rows.end(),
                           [&](const DeltaEsRow& r) { return r.term == sub; });
    if (it == subword_rows.end() || !it->delta_es) {
      row.partial = true;
      if (it != subword_rows.end()) {
        row.n_pairs_skipped += it->n_pairs_skipped;
      }
      continue;
    }
    any_defined = true;
    sum += *it->delta_es;
    row.n_pairs_used += it->n_pairs_used;
    row.n_pairs_skipped += it->n_pairs_skipped;
  }
  if (any_defined) {
    row.delta_es = sum;
  } else {
    row.partial = false;
  }
  return row;
}

std::vector<WordDeltaEsRow> DeltaEsWords(
    std::span<const ScoredQuery> queries,
    std::span<const DeltaEsRow> subword_rows, const CorpusStats* stats) {
  // Surface word -> constituent subwords of its first occurrence.
  std::map<std::string, std::vector<std::string>> words;
  for (const auto& scored : queries) {
    const auto& tokens = scored.query->tokens();
    const auto surface = ReconstructWords(tokens);
    std::vector<std::vector<std::string>> pieces(surface.size());
    for (const auto& tok : tokens) pieces[tok.word_index].push_back(tok.text);
    for (size_t w = 0; w < surface.size(); ++w) {
      words.try_emplace(surface[w], std::move(pieces[w]));
    }
  }
  std::vector<WordDeltaEsRow> rows;
  rows.reserve(words.size());
  for (const auto& [word, subwords] : words) {
    rows.push_back(DeltaEsWord(word, subwords, subword_rows));
    if (stats != nullptr) {
      rows.back().idf = TryIdf(*stats, word, Granularity::kWord);
    }
  }
  return rows;
}

// ---------------------------------------------------------------------------

std::vector<MatchStatsRow> MatchStats(const ScoredQuery& scored,
                                      size_t top_k) {
  const EmbeddingSequence& query = *scored.query;
  const auto& qtokens = query.tokens();
  const size_t n_docs = scored.traces.size();
  std::vector<MatchStatsRow> rows;
  rows.reserve(qtokens.size());
  for (size_t i = 0; i < qtokens.size(); ++i) {
    // Texts of query tokens that belong to other words.
    std::unordered_set<std::string_view> other_terms;
    for (const auto& tok : qtokens) {
      if (tok.word_index != qtokens[i].word_index) other_terms.insert(tok.text);
    }
    size_t exact = 0, other = 0;
    std::map<std::string_view, size_t> counts;
    for (size_t k = 0; k < n_docs; ++k) {
      const std::string& matched =
          scored.docs[k]->tokens()[scored.traces[k][i].j_star].text;
      ++counts[matched];
      if (matched == qtokens[i].text) {
        ++exact;
      } else if (other_terms.contains(matched)) {
        ++other;
      }
    }
    MatchStatsRow row;
    row.query_id = query.id();
    row.position = i;
    row.token = qtokens[i].text;
    row.n_docs = n_docs;
    if (n_docs > 0) {
      const double denom = static_cast<double>(n_docs);
      row.exact_match_freq = static_cast<double>(exact) / denom;
      row.other_query_term_freq = static_cast<double>(other) / denom;
      std::vector<std::pair<std::string_view, size_t>> ordered(counts.begin(),
                                                               counts.end());
      std::stable_sort(ordered.begin(), ordered.end(),
                       [](const auto& a, const auto& b) {
                         return a.second > b.second;
                       });
      if (ordered.size() > top_k) ordered.resize(top_k);
      for (const auto& [text, count] : ordered) {
        row.top_matches.emplace_back(std::string(text),
                                     static_cast<double>(count) / denom);
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

// ---------------------------------------------------------------------------

SpectralRow SpectralFromRows(std::string term, std::span<const float> rows,
                             size_t m, size_t dim) {
  if (m == 0) {
    throw InputError("term '" + term + "' has no occurrences to analyse");
  }
  SpectralRow row;
  row.term = std::move(term);
  row.m = m;
  row.singular_values = SingularValues(rows, m, dim);
  double total = 0.0;
  for (double s : row.singular_values) total += s;
  row.ratio = row.singular_values.front() / total;
  return row;
}

namespace {

uint64_t Fnv1a(std::string_view s) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

struct Occurrence {
  size_t doc;
  size_t position;
  auto operator<=>(const Occurrence&) const = default;
};

// Algorithm R with a fixed-seed engine; returned in pool order.
std::vector<Occurrence> Reservoir(const std::vector<Occurrence>& pool,
                                  size_t cap, uint64_t seed) {
  if (pool.size() <= cap) return pool;
  std::mt19937_64 rng(seed);
  std::vector<Occurrence> sample(pool.begin(), pool.begin() + cap);
  for (size_t i = cap; i < pool.size(); ++i) {
    const size_t j = std::uniform_int_distribution<size_t>(0, i)(rng);
    if (j < cap) sample[j] = pool[i];
  }
  std::sort(sample.begin(), sample.end());
  return sample;
}

}  // namespace

std::vector<SpectralRow> SpectralRatios(std::span<const ScoredQuery> queries,
                                        const EmbeddingStore& docs,
                                        const CorpusStats* stats,
                                        const SpectralOptions& options) {
  std::map<std::string, std::vector<Occurrence>, std::less<>> pools;
  for (const auto& scored : queries) {
    for (const auto& tok : scored.query->tokens()) pools[tok.text];
  }
  std::set<size_t> pool_docs;
  for (const auto& scored : queries) {
    for (const auto& id : scored.candidates->doc_ids) {
      if (auto idx = docs.IndexOf(id)) pool_docs.insert(*idx);
    }
  }
  for (size_t d : pool_docs) {
    const auto& tokens = docs.at(d).tokens();
    for (size_t p = 0; p < tokens.size(); ++p) {
      auto it = pools.find(tokens[p].text);
      if (it != pools.end()) it->second.push_back({d, p});
    }
  }

  std::vector<std::pair<std::string, std::vector<Occurrence>>> jobs;
  for (auto& [term, pool] : pools) {
    if (!pool.empty()) jobs.emplace_back(term, std::move(pool));
  }
  const size_t cap = std::max<size_t>(options.cap, 1);
  std::vector<SpectralRow> rows(jobs.size());
  ParallelFor(jobs.size(), options.threads, [&](size_t k) {
    const auto& [term, pool] = jobs[k];
    const auto sample = Reservoir(pool, cap, options.seed ^ Fnv1a(term));
    std::vector<float> matrix;
    matrix.reserve(sample.size() * docs.dim());
    for (const auto& occ : sample) {
      const auto row = docs.at(occ.doc).row(occ.position);
      matrix.insert(matrix.end(), row.begin(), row.end());
    }
    rows[k] = SpectralFromRows(term, matrix, sample.size(), docs.dim());
    if (stats != nullptr) {
      rows[k].idf_subword = TryIdf(*stats, term, Granularity::kSubword);
    }
  });
  return rows;
}

}  // namespace lilens
