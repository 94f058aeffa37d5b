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

#include "lilens/corpus_stats.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "lilens/errors.h"

namespace lilens {

std::string_view GranularityName(Granularity g) {
  return g == Granularity::kSubword ? "subword" : "word";
}

std::vector<std::string> ReconstructWords(std::span<const Token> tokens) {
  std::vector<std::string> words;
  for (const Token& tok : tokens) {
    if (tok.word_index >= words.size()) words.resize(tok.word_index + 1);
    std::string_view piece = tok.text;
    if (piece.starts_with(kContinuationMarker)) {
      piece.remove_prefix(kContinuationMarker.size());
    }
    words[tok.word_index].append(piece);
  }
  return words;
}

CorpusStats ComputeCorpusStats(std::span<const std::vector<Token>> corpus) {
  if (corpus.empty()) throw InputError("cannot compute stats of empty corpus");
  CorpusStats stats;
  stats.n_docs = corpus.size();
  for (const auto& doc : corpus) {
    std::set<std::string_view> subwords;
    for (const Token& tok : doc) subwords.insert(tok.text);
    for (auto s : subwords) ++stats.df_subword[std::string(s)];
    std::vector<std::string> words = ReconstructWords(doc);
    std::set<std::string> distinct(words.begin(), words.end());
    for (const auto& w : distinct) ++stats.df_word[w];
  }
  return stats;
}

CorpusStats ComputeCorpusStats(const EmbeddingStore& docs) {
  std::vector<std::vector<Token>> corpus;
  corpus.reserve(docs.size());
  for (const auto& seq : docs.sequences()) corpus.push_back(seq.tokens());
  return ComputeCorpusStats(corpus);
}

std::optional<double> TryIdf(const CorpusStats& stats, std::string_view term,
                             Granularity g) {
  const auto& df = stats.df(g);
  auto it = df.find(term);
  if (it == df.end()) return std::nullopt;
  const double count = static_cast<double>(std::max<uint64_t>(it->second, 1));
  return std::log(static_cast<double>(stats.n_docs) / count);
}

double Idf(const CorpusStats& stats, std::string_view term, Granularity g) {
  auto value = TryIdf(stats, term, g);
  if (!value) {
    throw InputError("unknown " + std::string(GranularityName(g)) +
                     " term '" + std::string(term) + "'");
  }
  return *value;
}

void WriteCorpusStats(const CorpusStats& stats, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open " + path + " for writing");
  out << "#N " << stats.n_docs << '\n';
  for (Granularity g : {Granularity::kSubword, Granularity::kWord}) {
    for (const auto& [term, df] : stats.df(g)) {
      out << term << '\t' << df << '\t' << GranularityName(g) << '\n';
    }
  }
  if (!out) throw InputError("write failed: " + path);
}

namespace {

uint64_t ParseCount(std::string_view field, const std::string& where) {
  uint64_t value = 0;
  auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw InputError(where + ": expected a non-negative integer, got '" +
                     std::string(field) + "'");
  }
  return value;
}

}  // namespace

CorpusStats ReadCorpusStats(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open corpus stats file " + path);
  CorpusStats stats;
  std::string line;
  size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string where = path + ":" + std::to_string(line_no);
    if (!have_header) {
      if (!line.starts_with("#N ")) {
        throw InputError(where + ": expected header '#N <count>'");
      }
      stats.n_docs = ParseCount(std::string_view(line).substr(3), where);
      if (stats.n_docs == 0) throw InputError(where + ": N must be positive");
      have_header = true;
      continue;
    }
    if (line.empty()) continue;
    const size_t tab1 = line.find('\t');
    const size_t tab2 =
        tab1 == std::string::npos ? tab1 : line.find('\t', tab1 + 1);
    if (tab2 == std::string::npos || line.find('\t', tab2 + 1) != line.npos) {
      throw InputError(where + ": expected term<TAB>df<TAB>granularity");
    }
    std::string term = line.substr(0, tab1);
    const uint64_t df = ParseCount(
        std::string_view(line).substr(tab1 + 1, tab2 - tab1 - 1), where);
    const std::string_view gran = std::string_view(line).substr(tab2 + 1);
    if (df < 1 || df > stats.n_docs) {
      throw InputError(where + ": df " + std::to_string(df) +
                       " outside [1, N]");
    }
    auto& map = gran == "subword" ? stats.df_subword
                : gran == "word"
                    ? stats.df_word
                    : throw InputError(where + ": unknown granularity '" +
                                       std::string(gran) + "'");
    if (!map.emplace(std::move(term), df).second) {
      throw InputError(where + ": duplicate term");
    }
  }
  if (!have_header) throw InputError(path + ": empty corpus stats file");
  return stats;
}

}  // namespace lilens
