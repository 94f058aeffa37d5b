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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>

#include "lilens/errors.h"
#include "test_util.h"

namespace lilens {
namespace {

using testing::Words;

std::string TempPath(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("lilens_" + name)).string();
}

TEST(CorpusStatsTest, CountsDocumentsContainingWord) {
  std::vector<std::vector<Token>> corpus = {
      Words({"apple", "pie", "apple"}), Words({"banana"}),
      Words({"green", "apple"})};
  const CorpusStats stats = ComputeCorpusStats(corpus);
  EXPECT_EQ(stats.n_docs, 3u);
  EXPECT_EQ(stats.df_word.at("apple"), 2u);
  EXPECT_EQ(stats.df_subword.at("apple"), 2u);
  EXPECT_EQ(stats.df_word.at("banana"), 1u);
}

TEST(CorpusStatsTest, GroupsSubwordsIntoWords) {
  std::vector<std::vector<Token>> corpus = {
      {{"ship", 0}, {"##ling", 0}, {"sails", 1}}};
  const CorpusStats stats = ComputeCorpusStats(corpus);
  EXPECT_EQ(stats.df_subword.at("##ling"), 1u);
  EXPECT_EQ(stats.df_subword.at("ship"), 1u);
  EXPECT_EQ(stats.df_word.at("shipling"), 1u);
  EXPECT_EQ(stats.df_word.count("ship"), 0u);
}

TEST(CorpusStatsTest, ReconstructWordsIsPureFunctionOfTokens) {
  const std::vector<Token> tokens = {
      {"left", 0}, {"vent", 1}, {"##ric", 1}, {"##ular", 1}};
  EXPECT_EQ(ReconstructWords(tokens),
            (std::vector<std::string>{"left", "ventricular"}));
  EXPECT_EQ(ReconstructWords(tokens), ReconstructWords(tokens));
}

TEST(CorpusStatsTest, EmptyCorpusIsAnError) {
  std::vector<std::vector<Token>> corpus;
  EXPECT_THROW(ComputeCorpusStats(corpus), InputError);
}

TEST(CorpusStatsTest, RandomCorpusMatchesBruteForceMembership) {
  std::mt19937_64 rng(11);
  const std::vector<std::string> pieces = {"a", "b", "##c", "##d", "e"};
  std::uniform_int_distribution<size_t> pick(0, pieces.size() - 1);
  std::uniform_int_distribution<size_t> len(1, 12);
  std::vector<std::vector<Token>> corpus(60);
  for (auto& doc : corpus) {
    uint32_t word = 0;
    const size_t n = len(rng);
    for (size_t i = 0; i < n; ++i) {
      std::string text = pieces[pick(rng)];
      // A continuation piece extends the current word except at the start.
      if (!text.starts_with("##") || doc.empty()) {
        if (!doc.empty()) ++word;
        if (text.starts_with("##")) text = text.substr(2);
      }
      doc.push_back({text, word});
    }
  }
  const CorpusStats stats = ComputeCorpusStats(corpus);

  // Oracle: for each term, scan every document.
  std::set<std::string> subwords, words;
  for (const auto& doc : corpus) {
    for (const auto& t : doc) subwords.insert(t.text);
    for (const auto& w : ReconstructWords(doc)) words.insert(w);
  }
  for (const auto& term : subwords) {
    uint64_t df = 0;
    for (const auto& doc : corpus) {
      bool found = false;
      for (const auto& t : doc) found = found || t.text == term;
      df += found;
    }
    EXPECT_EQ(stats.df_subword.at(term), df) << term;
  }
  for (const auto& term : words) {
    uint64_t df = 0;
    for (const auto& doc : corpus) {
      const auto ws = ReconstructWords(doc);
      df += std::find(ws.begin(), ws.end(), term) != ws.end();
    }
    EXPECT_EQ(stats.df_word.at(term), df) << term;
  }
  EXPECT_EQ(stats.df_subword.size(), subwords.size());
  EXPECT_EQ(stats.df_word.size(), words.size());
}

TEST(IdfTest, AnalyticValues) {
  CorpusStats stats;
  stats.n_docs = 1000;
  stats.df_word = {{"every", 1000}, {"once", 1}};
  EXPECT_DOUBLE_EQ(Idf(stats, "every", Granularity::kWord), 0.0);
  EXPECT_NEAR(Idf(stats, "once", Granularity::kWord), 6.9078, 1e-4);
  EXPECT_THROW(Idf(stats, "never", Granularity::kWord), InputError);
  EXPECT_FALSE(TryIdf(stats, "once", Granularity::kSubword).has_value());
}

TEST(IdfTest, MsMarcoScaleSanity) {
  // Inverting ln(N/df) = 8 at N = 8,841,823 gives df = N / e^8 ~ 2965.9.
  CorpusStats stats;
  stats.n_docs = 8841823;
  const double df = std::round(8841823.0 / std::exp(8.0));
  EXPECT_EQ(df, 2966.0);
  stats.df_word = {{"term", 2965}};
  EXPECT_NEAR(Idf(stats, "term", Granularity::kWord), 8.0, 1e-3);
}

TEST(IdfTest, MonotoneDecreasingInDf) {
  CorpusStats stats;
  stats.n_docs = 500;
  for (uint64_t df = 1; df <= 500; ++df) {
    stats.df_word["w" + std::to_string(df)] = df;
  }
  for (uint64_t df = 1; df < 500; ++df) {
    EXPECT_GT(Idf(stats, "w" + std::to_string(df), Granularity::kWord),
              Idf(stats, "w" + std::to_string(df + 1), Granularity::kWord));
  }
}

TEST(CorpusStatsFileTest, RoundTripsCanonicalTsv) {
  std::vector<std::vector<Token>> corpus = {
      {{"ship", 0}, {"##ling", 0}}, Words({"ship", "dock"})};
  const CorpusStats stats = ComputeCorpusStats(corpus);
  const std::string path = TempPath("stats_roundtrip.tsv");
  WriteCorpusStats(stats, path);
  const CorpusStats loaded = ReadCorpusStats(path);
  EXPECT_EQ(loaded.n_docs, stats.n_docs);
  EXPECT_EQ(loaded.df_subword, stats.df_subword);
  EXPECT_EQ(loaded.df_word, stats.df_word);

  std::ifstream in(path);
  std::string first;
  std::getline(in, first);
  EXPECT_EQ(first, "#N 2");
}

TEST(CorpusStatsFileTest, RejectsMalformedFiles) {
  const std::string path = TempPath("stats_bad.tsv");
  auto write = [&](const std::string& body) {
    std::ofstream(path) << body;
  };
  write("term\t1\tword\n");
  EXPECT_THROW(ReadCorpusStats(path), InputError);
  write("#N 3\nterm\t4\tword\n");
  EXPECT_THROW(ReadCorpusStats(path), InputError);  // df > N
  write("#N 3\nterm\t0\tword\n");
  EXPECT_THROW(ReadCorpusStats(path), InputError);  // df < 1
  write("#N 3\nterm\t1\tphrase\n");
  EXPECT_THROW(ReadCorpusStats(path), InputError);
  write("#N 3\nterm\tx\tword\n");
  EXPECT_THROW(ReadCorpusStats(path), InputError);
  write("#N 3\nterm\t1\n");
  EXPECT_THROW(ReadCorpusStats(path), InputError);
  EXPECT_THROW(ReadCorpusStats(TempPath("does_not_exist.tsv")), InputError);
}

}  // namespace
}  // namespace lilens
