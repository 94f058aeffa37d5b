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

#ifndef LILENS_RUN_IO_H_
#define LILENS_RUN_IO_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "lilens/scoring.h"
#include "lilens/types.h"

namespace lilens {

// Parses TREC run lines "qid Q0 docid rank score tag". Queries come back in
// first-appearance order; docs within a query in ascending rank.
std::vector<CandidateSet> ReadRun(std::istream& in,
                                  const std::string& source_name = "<run>");
std::vector<CandidateSet> LoadRun(const std::string& path);

// Throws InputError naming the first candidate whose doc id is not in `docs`.
void ValidateCandidates(const std::vector<CandidateSet>& runs,
                        const EmbeddingStore& docs);

inline constexpr char kRunTag[] = "lilens";

// Scores are written with 9 significant digits.
void WriteRun(const std::vector<Ranking>& rankings, std::ostream& out,
              const std::string& tag = kRunTag);

}  // namespace lilens

#endif  // LILENS_RUN_IO_H_
