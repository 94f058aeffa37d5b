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

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_map>

#include "lilens/errors.h"
#include "lilens/text_format.h"

namespace lilens {
namespace {

struct RunLine {
  long long rank;
  std::string doc_id;
  double score;
};

}  // namespace

std::vector<CandidateSet> ReadRun(std::istream& in,
                                  const std::string& source_name) {
  std::vector<std::string> query_order;
  std::unordered_map<std::string, std::vector<RunLine>> by_query;
  std::set<std::pair<std::string, std::string>> seen;

  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string where = source_name + ":" + std::to_string(line_no);
    std::istringstream fields(line);
    std::vector<std::string> parts;
    for (std::string f; fields >> f;) parts.push_back(std::move(f));
    if (parts.empty()) continue;
    if (parts.size() != 6) {
      throw InputError(where + ": expected 6 fields 'qid Q0 docid rank score "
                               "tag', got " + std::to_string(parts.size()));
    }
    RunLine entry;
    entry.doc_id = parts[2];
    {
      const auto& f = parts[3];
      auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(),
                                       entry.rank);
      if (ec != std::errc() || ptr != f.data() + f.size()) {
        throw InputError(where + ": non-numeric rank '" + f + "'");
      }
    }
    {
      const auto& f = parts[4];
      auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(),
                                       entry.score);
      if (ec != std::errc() || ptr != f.data() + f.size()) {
        throw InputError(where + ": non-numeric score '" + f + "'");
      }
    }
    const std::string& qid = parts[0];
    if (!seen.emplace(qid, entry.doc_id).second) {
      throw InputError(where + ": duplicate (query, doc) pair (" + qid + ", " +
                       entry.doc_id + ")");
    }
    auto [it, inserted] = by_query.try_emplace(qid);
    if (inserted) query_order.push_back(qid);
    it->second.push_back(std::move(entry));
    if (it->second.size() > kMaxCandidates) {
      throw InputError(where + ": candidate set exceeds 1000 for query '" +
                       qid + "'");
    }
  }

  std::vector<CandidateSet> runs;
  runs.reserve(query_order.size());
  for (const auto& qid : query_order) {
    auto& lines = by_query[qid];
    std::stable_sort(lines.begin(), lines.end(),
                     [](const RunLine& a, const RunLine& b) {
                       return a.rank < b.rank;
                     });
    CandidateSet set;
    set.query_id = qid;
    for (auto& l : lines) {
      set.doc_ids.push_back(std::move(l.doc_id));
      set.first_stage_scores.push_back(l.score);
    }
    runs.push_back(std::move(set));
  }
  return runs;
}

std::vector<CandidateSet> LoadRun(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open run file " + path);
  return ReadRun(in, path);
}

void ValidateCandidates(const std::vector<CandidateSet>& runs,
                        const EmbeddingStore& docs) {
  for (const auto& set : runs) {
    for (const auto& doc_id : set.doc_ids) {
      if (docs.Find(doc_id) == nullptr) {
        throw InputError("query '" + set.query_id + "': candidate doc '" +
                         doc_id + "' not found in document store");
      }
    }
  }
}

void WriteRun(const std::vector<Ranking>& rankings, std::ostream& out,
              const std::string& tag) {
  for (const auto& ranking : rankings) {
    size_t rank = 1;
    for (const auto& [doc_id, score] : ranking.entries) {
      out << ranking.query_id << " Q0 " << doc_id << ' ' << rank++ << ' '
          << FormatSignificant(score, 9) << ' ' << tag << '\n';
    }
  }
}

}  // namespace lilens
