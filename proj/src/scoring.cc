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

#include "lilens/scoring.h"

#include <algorithm>
#include <numeric>

#include "lilens/errors.h"
#include "lilens/parallel.h"

namespace lilens {

double ArgmaxTrace::Sum() const {
  double total = 0.0;
  for (const auto& m : matches) total += m.c_max;
  return total;
}

std::vector<std::string> Ranking::DocIds() const {
  std::vector<std::string> ids;
  ids.reserve(entries.size());
  for (const auto& e : entries) ids.push_back(e.first);
  return ids;
}

TokenMask::TokenMask(std::vector<size_t> positions, size_t n_query_tokens)
    : positions_(std::move(positions)) {
  std::sort(positions_.begin(), positions_.end());
  positions_.erase(std::unique(positions_.begin(), positions_.end()),
                   positions_.end());
  if (!positions_.empty() && positions_.back() >= n_query_tokens) {
    throw InputError("masked position " + std::to_string(positions_.back()) +
                     " out of range for " + std::to_string(n_query_tokens) +
                     " query tokens");
  }
}

bool TokenMask::Contains(size_t i) const {
  return std::binary_search(positions_.begin(), positions_.end(), i);
}

double Dot(std::span<const float> a, std::span<const float> b) {
  // Four independent partial sums in a fixed pattern; the result depends
  // only on the inputs.
  const size_t n = a.size();
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    s0 += static_cast<double>(a[k]) * b[k];
    s1 += static_cast<double>(a[k + 1]) * b[k + 1];
    s2 += static_cast<double>(a[k + 2]) * b[k + 2];
    s3 += static_cast<double>(a[k + 3]) * b[k + 3];
  }
  for (; k < n; ++k) s0 += static_cast<double>(a[k]) * b[k];
  return (s0 + s1) + (s2 + s3);
}

namespace {

void CheckDims(size_t a, size_t b) {
  if (a != b) {
    throw InputError("dimension mismatch: " + std::to_string(a) + " vs " +
                     std::to_string(b));
  }
}

}  // namespace

std::vector<double> CosineRow(std::span<const float> q_tok,
                              const EmbeddingSequence& doc) {
  CheckDims(q_tok.size(), doc.dim());
  std::vector<double> row(doc.size());
  for (size_t j = 0; j < doc.size(); ++j) row[j] = Dot(q_tok, doc.row(j));
  return row;
}

ArgmaxTrace MaxSim(const EmbeddingSequence& query,
                   const EmbeddingSequence& doc) {
  CheckDims(query.dim(), doc.dim());
  ArgmaxTrace trace;
  trace.matches.resize(query.size());
  for (size_t i = 0; i < query.size(); ++i) {
    const auto q = query.row(i);
    TokenMatch best{Dot(q, doc.row(0)), 0};
    for (size_t j = 1; j < doc.size(); ++j) {
      const double c = Dot(q, doc.row(j));
      if (c > best.c_max) best = {c, j};  // strict: first index wins ties
    }
    trace.matches[i] = best;
  }
  return trace;
}

double Score(const EmbeddingSequence& query, const EmbeddingSequence& doc) {
  return MaxSim(query, doc).Sum();
}

double MaskedScore(const ArgmaxTrace& trace, const TokenMask& mask) {
  double total = 0.0;
  for (size_t i = 0; i < trace.size(); ++i) {
    if (!mask.Contains(i)) total += trace[i].c_max;
  }
  return total;
}

double MaskedScore(const EmbeddingSequence& query,
                   const EmbeddingSequence& doc, const TokenMask& mask) {
  if (!mask.empty() && mask.positions().back() >= query.size()) {
    throw InputError("masked position out of range");
  }
  return MaskedScore(MaxSim(query, doc), mask);
}

Ranking MakeRanking(std::string query_id,
                    std::vector<std::pair<std::string, double>> scored) {
  std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  return Ranking{std::move(query_id), std::move(scored)};
}

std::vector<ArgmaxTrace> TraceCandidates(const EmbeddingSequence& query,
                                         const CandidateSet& candidates,
                                         const EmbeddingStore& docs,
                                         size_t threads) {
  std::vector<const EmbeddingSequence*> resolved;
  resolved.reserve(candidates.doc_ids.size());
  for (const auto& id : candidates.doc_ids) {
    const EmbeddingSequence* doc = docs.Find(id);
    if (doc == nullptr) {
      throw InputError("query '" + candidates.query_id +
                       "': unresolvable doc id '" + id + "'");
    }
    resolved.push_back(doc);
  }
  CheckDims(query.dim(), docs.dim());
  std::vector<ArgmaxTrace> traces(resolved.size());
  ParallelFor(resolved.size(), threads,
              [&](size_t k) { traces[k] = MaxSim(query, *resolved[k]); });
  return traces;
}

Ranking RankFromTraces(const CandidateSet& candidates,
                       std::span<const ArgmaxTrace> traces,
                       const TokenMask& mask) {
  std::vector<std::pair<std::string, double>> scored;
  scored.reserve(traces.size());
  for (size_t k = 0; k < traces.size(); ++k) {
    scored.emplace_back(candidates.doc_ids[k], MaskedScore(traces[k], mask));
  }
  return MakeRanking(candidates.query_id, std::move(scored));
}

Ranking Rerank(const EmbeddingSequence& query, const CandidateSet& candidates,
               const EmbeddingStore& docs, const TokenMask& mask,
               const RerankOptions& options) {
  if (!mask.empty() && mask.positions().back() >= query.size()) {
    throw InputError("masked position out of range");
  }
  const auto traces =
      TraceCandidates(query, candidates, docs, options.threads);
  return RankFromTraces(candidates, traces, mask);
}

}  // namespace lilens
