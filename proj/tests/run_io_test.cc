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

#include "lilens/run_io.h"

#include <gtest/gtest.h>

#include <sstream>

#include "lilens/errors.h"
#include "test_util.h"

namespace lilens {
namespace {

std::vector<CandidateSet> Parse(const std::string& text) {
  std::istringstream in(text);
  return ReadRun(in, "run");
}

TEST(LoadRunTest, ParsesTrecLines) {
  const auto runs = Parse("q1 Q0 d1 1 12.3 bm25\nq1 Q0 d2 2 11.0 bm25\n");
  ASSERT_EQ(runs.size(), 1u);
  EXPECT_EQ(runs[0].query_id, "q1");
  EXPECT_EQ(runs[0].doc_ids, (std::vector<std::string>{"d1", "d2"}));
  EXPECT_EQ(runs[0].first_stage_scores, (std::vector<double>{12.3, 11.0}));
}

TEST(LoadRunTest, OrdersByRankAndKeepsQueryOrder) {
  const auto runs = Parse(
      "q2 Q0 b 2 1 t\n"
      "q1 Q0 x 1 5 t\n"
      "q2 Q0 a 1 2 t\n"
      "\n"
      "q2\tQ0\tc   3 0.5 t\n");
  ASSERT_EQ(runs.size(), 2u);
  EXPECT_EQ(runs[0].query_id, "q2");
  EXPECT_EQ(runs[0].doc_ids, (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_EQ(runs[1].query_id, "q1");
}

TEST(LoadRunTest, NonNumericRankNamesLine) {
  try {
    Parse("q1 Q0 d1 1 1.0 t\nq1 Q0 d2 x 1.0 t\n");
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("run:2"), std::string::npos)
        << e.what();
  }
  EXPECT_THROW(Parse("q1 Q0 d1 1 abc t\n"), InputError);
  EXPECT_THROW(Parse("q1 Q0 d1 1\n"), InputError);
}

TEST(LoadRunTest, RejectsDuplicatePairs) {
  EXPECT_THROW(Parse("q Q0 d 1 1 t\nq Q0 d 2 0.5 t\n"), InputError);
}

TEST(LoadRunTest, RejectsMoreThanThousandCandidates) {
  std::string text;
  for (int i = 1; i <= 1500; ++i) {
    text += "q1 Q0 d" + std::to_string(i) + " " + std::to_string(i) + " 1 t\n";
  }
  try {
    Parse(text);
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("candidate set exceeds 1000"),
              std::string::npos);
  }
  text.clear();
  for (int i = 1; i <= 1000; ++i) {
    text += "q1 Q0 d" + std::to_string(i) + " " + std::to_string(i) + " 1 t\n";
  }
  EXPECT_EQ(Parse(text)[0].doc_ids.size(), 1000u);
}

TEST(LoadRunTest, ValidatesAgainstDocumentStore) {
  std::vector<EmbeddingSequence> seqs;
  seqs.push_back(testing::Seq("d1", {{1.0f}}));
  const EmbeddingStore docs(1, std::move(seqs));
  EXPECT_NO_THROW(ValidateCandidates(Parse("q Q0 d1 1 1 t\n"), docs));
  EXPECT_THROW(ValidateCandidates(Parse("q Q0 d9 1 1 t\n"), docs), InputError);
}

TEST(WriteRunTest, WritesNineSignificantDigits) {
  Ranking r{"q1", {{"d2", 2.0 / 3.0}, {"d1", 0.5}}};
  std::ostringstream out;
  WriteRun({r}, out);
  EXPECT_EQ(out.str(),
            "q1 Q0 d2 1 0.666666667 lilens\n"
            "q1 Q0 d1 2 0.5 lilens\n");
  std::istringstream back(out.str());
  EXPECT_EQ(ReadRun(back)[0].doc_ids, (std::vector<std::string>{"d2", "d1"}));
}

}  // namespace
}  // namespace lilens
