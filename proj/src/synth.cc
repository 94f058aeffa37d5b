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

#include "lilens/synth.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "lilens/embedding_io.h"
#include "lilens/errors.h"
#include "lilens/run_io.h"

namespace lilens {
namespace {

constexpr std::string_view kSyllables[] = {"ka", "lo", "mi", "nu", "pe",
                                           "ra", "si", "to", "vu", "ze"};
constexpr std::string_view kPrefixes[] = {"un", "re", "in", "de",
                                          "pro", "con", "dis", "pre"};
constexpr size_t kFunctionWords = 10;

std::string WordName(size_t k) {
  std::string name;
  for (int d = 0; d < 3; ++d) {
    name.insert(0, kSyllables[k % 10]);
    k /= 10;
  }
  return name;
}

// Subwords of vocabulary word k.
std::vector<std::string> Pieces(size_t k, size_t vocab_size) {
  if (3 * k < 2 * vocab_size) return {WordName(k)};
  return {std::string(kPrefixes[k % std::size(kPrefixes)]),
          std::string(kContinuationMarker) + WordName(k)};
}

std::string PaddedId(char prefix, size_t n, size_t total) {
  const size_t width = std::to_string(total).size();
  std::string digits = std::to_string(n);
  return std::string(1, prefix) + std::string(width - digits.size(), '0') +
         digits;
}

class Embedder {
 public:
  Embedder(size_t dim, double context_weight, std::mt19937_64& rng)
      : dim_(dim), context_weight_(context_weight), rng_(rng) {}

  std::vector<double> RandomUnit() {
    std::vector<double> v(dim_);
    double norm = 0.0;
    do {
      norm = 0.0;
      for (double& x : v) {
        x = normal_(rng_);
        norm += x * x;
      }
    } while (norm == 0.0);
    norm = std::sqrt(norm);
    for (double& x : v) x /= norm;
    return v;
  }

  void Append(const std::vector<double>& direction, double concentration,
              const std::vector<double>& context, std::vector<float>& out) {
    const double scale = 1.0 / std::sqrt(static_cast<double>(dim_));
    for (size_t k = 0; k < dim_; ++k) {
      const double noise = normal_(rng_) * scale;
      const double g =
          context_weight_ * context[k] + (1.0 - context_weight_) * noise;
      out.push_back(static_cast<float>(concentration * direction[k] +
                                       (1.0 - concentration) * g));
    }
  }

 private:
  size_t dim_;
  double context_weight_;
  std::mt19937_64& rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

std::vector<Token> Tokenize(std::span<const size_t> words, size_t vocab_size) {
  std::vector<Token> tokens;
  for (size_t w = 0; w < words.size(); ++w) {
    for (auto& piece : Pieces(words[w], vocab_size)) {
      tokens.push_back({std::move(piece), static_cast<uint32_t>(w)});
    }
  }
  return tokens;
}

}  // namespace

SynthCorpus GenerateSynthCorpus(const SynthConfig& config) {
  if (config.vocab_size <= kFunctionWords || config.vocab_size > 1000 ||
      config.n_docs < 2 || config.dim == 0 ||
      config.min_doc_words == 0 ||
      config.max_doc_words < config.min_doc_words ||
      config.candidates_per_query < 2 ||
      config.candidates_per_query > std::min(config.n_docs, kMaxCandidates)) {
    throw InputError("invalid synth configuration");
  }
  std::mt19937_64 rng(config.seed);
  const size_t vocab = config.vocab_size;

  std::vector<double> weights(vocab);
  for (size_t k = 0; k < vocab; ++k) {
    weights[k] = std::pow(static_cast<double>(k + 1), -config.zipf_exponent);
  }
  std::discrete_distribution<size_t> zipf(weights.begin(), weights.end());
  std::uniform_int_distribution<size_t> doc_len(config.min_doc_words,
                                                config.max_doc_words);

  // Documents as word-id sequences.
  std::vector<std::vector<size_t>> doc_words(config.n_docs);
  std::vector<std::vector<Token>> doc_tokens(config.n_docs);
  for (size_t d = 0; d < config.n_docs; ++d) {
    const size_t len = doc_len(rng);
    for (size_t w = 0; w < len; ++w) doc_words[d].push_back(zipf(rng));
    doc_tokens[d] = Tokenize(doc_words[d], vocab);
  }
  SynthCorpus corpus;
  corpus.stats = ComputeCorpusStats(doc_tokens);

  // Per-subword direction and concentration.
  double idf_min = INFINITY, idf_max = -INFINITY;
  for (const auto& [term, df] : corpus.stats.df_subword) {
    const double v = Idf(corpus.stats, term, Granularity::kSubword);
    idf_min = std::min(idf_min, v);
    idf_max = std::max(idf_max, v);
  }
  Embedder embedder(config.dim, config.context_weight, rng);
  struct TermModel {
    std::vector<double> direction;
    double concentration;
  };
  std::map<std::string, TermModel, std::less<>> models;
  for (const auto& [term, df] : corpus.stats.df_subword) {
    const double v = Idf(corpus.stats, term, Granularity::kSubword);
    const double t =
        idf_max > idf_min ? (v - idf_min) / (idf_max - idf_min) : 1.0;
    models[term] = {embedder.RandomUnit(),
                    kMinConcentration +
                        (kMaxConcentration - kMinConcentration) * t};
  }
  auto embed = [&](const std::vector<Token>& tokens) {
    const auto context = embedder.RandomUnit();
    std::vector<float> matrix;
    matrix.reserve(tokens.size() * config.dim);
    for (const auto& tok : tokens) {
      auto it = models.find(tok.text);
      if (it == models.end()) {
        // Query-only subword: fully context driven.
        it = models.emplace(tok.text, TermModel{embedder.RandomUnit(),
                                                kMinConcentration})
                 .first;
      }
      embedder.Append(it->second.direction, it->second.concentration, context,
                      matrix);
    }
    return matrix;
  };

  std::vector<EmbeddingSequence> docs;
  docs.reserve(config.n_docs);
  for (size_t d = 0; d < config.n_docs; ++d) {
    auto matrix = embed(doc_tokens[d]);
    docs.emplace_back(PaddedId('d', d, config.n_docs), doc_tokens[d],
                      std::move(matrix), config.dim);
  }

  // Queries and their first-stage candidates.
  std::vector<std::set<size_t>> doc_sets(config.n_docs);
  for (size_t d = 0; d < config.n_docs; ++d) {
    doc_sets[d].insert(doc_words[d].begin(), doc_words[d].end());
  }
  std::vector<double> word_idf(vocab, 0.0);
  for (size_t k = 0; k < vocab; ++k) {
    std::string surface;
    for (const auto& p : Pieces(k, vocab)) {
      surface += std::string_view(p).starts_with(kContinuationMarker)
                     ? p.substr(kContinuationMarker.size())
                     : p;
    }
    word_idf[k] =
        TryIdf(corpus.stats, surface, Granularity::kWord).value_or(0.0);
  }

  std::uniform_int_distribution<size_t> pick_doc(0, config.n_docs - 1);
  std::uniform_int_distribution<size_t> pick_function(0, kFunctionWords - 1);
  std::vector<EmbeddingSequence> queries;
  for (size_t q = 0; q < config.n_queries; ++q) {
    const auto& seed_doc = doc_words[pick_doc(rng)];
    std::vector<size_t> content;
    for (size_t w : seed_doc) {
      if (w >= kFunctionWords &&
          std::find(content.begin(), content.end(), w) == content.end()) {
        content.push_back(w);
      }
    }
    std::shuffle(content.begin(), content.end(), rng);
    if (content.size() > config.content_words_per_query) {
      content.resize(config.content_words_per_query);
    }
    std::vector<size_t> words = content;
    for (size_t f = 0; f < config.function_words_per_query; ++f) {
      words.push_back(pick_function(rng));
    }
    std::shuffle(words.begin(), words.end(), rng);
    auto tokens = Tokenize(words, vocab);
    auto matrix = embed(tokens);
    const std::string qid = PaddedId('q', q, config.n_queries);
    queries.emplace_back(qid, std::move(tokens), std::move(matrix),
                         config.dim);

    // Bag-of-words first stage: sum of IDF over shared distinct words.
    const std::set<size_t> qset(words.begin(), words.end());
    std::vector<std::pair<double, size_t>> scored;
    for (size_t d = 0; d < config.n_docs; ++d) {
      double s = 0.0;
      for (size_t w : qset) {
        if (doc_sets[d].contains(w)) s += word_idf[w];
      }
      if (s > 0.0) scored.emplace_back(s, d);
    }
    std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
      return a.first != b.first ? a.first > b.first : a.second < b.second;
    });
    if (scored.size() > config.candidates_per_query) {
      scored.resize(config.candidates_per_query);
    }
    std::vector<bool> taken(config.n_docs, false);
    for (const auto& [s, d] : scored) taken[d] = true;
    while (scored.size() < config.candidates_per_query) {
      const size_t d = pick_doc(rng);
      if (!taken[d]) {
        taken[d] = true;
        scored.emplace_back(0.0, d);
      }
    }
    CandidateSet set;
    set.query_id = qid;
    for (const auto& [s, d] : scored) {
      set.doc_ids.push_back(PaddedId('d', d, config.n_docs));
      set.first_stage_scores.push_back(s);
    }
    corpus.runs.push_back(std::move(set));
  }

  corpus.queries = EmbeddingStore(config.dim, std::move(queries));
  corpus.docs = EmbeddingStore(config.dim, std::move(docs));
  return corpus;
}

void WriteSynthCorpus(const SynthCorpus& corpus, const std::string& dir) {
  std::filesystem::create_directories(dir);
  const std::filesystem::path root(dir);
  WriteEmbeddings(corpus.queries, (root / "queries.lieb").string());
  WriteEmbeddings(corpus.docs, (root / "docs.lieb").string());
  WriteCorpusStats(corpus.stats, (root / "stats.tsv").string());

  const std::string run_path = (root / "run.txt").string();
  std::ofstream run(run_path);
  if (!run) throw InputError("cannot open " + run_path + " for writing");
  for (const auto& set : corpus.runs) {
    for (size_t k = 0; k < set.doc_ids.size(); ++k) {
      run << set.query_id << " Q0 " << set.doc_ids[k] << ' ' << (k + 1) << ' '
          << set.first_stage_scores[k] << " synth\n";
    }
  }
}

}  // namespace lilens
