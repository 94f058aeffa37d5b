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

#ifndef LILENS_PIPELINE_H_
#define LILENS_PIPELINE_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lilens/analysis.h"
#include "lilens/corpus_stats.h"
#include "lilens/rank_correlation.h"
#include "lilens/scoring.h"
#include "lilens/types.h"

namespace lilens {

inline constexpr char kToolkitName[] = "lilens";
inline constexpr char kToolkitVersion[] = "0.1.0";

struct RunConfig {
  std::string queries_path;
  std::string docs_path;
  std::string run_path;
  std::string stats_path;  // empty: derive stats from the document store
  std::string out_dir = ".";
  size_t threads = 1;
  uint64_t seed = 0;
  TauApMode tau_ap_mode = TauApMode::kAsymmetric;
  size_t spectral_cap = kDefaultSpectralCap;
};

// Fully parsed and cross-validated inputs. Immutable once built.
struct AnalysisInputs {
  EmbeddingStore queries;
  EmbeddingStore docs;
  std::vector<CandidateSet> runs;
  CorpusStats stats;
};

// Parses every input and checks that run queries and docs resolve and that
// dimensions agree. Throws InputError naming the offending file.
AnalysisInputs LoadInputs(const RunConfig& config);

// One ScoredQuery per candidate set, in run order.
std::vector<ScoredQuery> ScoreAll(const AnalysisInputs& inputs,
                                  size_t threads);

struct Correlation {
  std::optional<double> r;  // rounded to 4 decimals
  size_t n_points = 0;
  std::string reason;  // set when r is absent
};

// Pearson over the points, or an absent r with a reason.
Correlation Correlate(const std::vector<double>& xs,
                      const std::vector<double>& ys);

struct ImportanceResult {
  std::vector<WordImportance> per_query;
  std::vector<TermImportanceRow> rows;
  std::vector<std::string> skipped_queries;  // |S_q| < 2
  Correlation idf_vs_tau_ap;
};

struct DeltaEsResult {
  std::vector<DeltaEsRow> subwords;
  std::vector<WordDeltaEsRow> words;
  Correlation idf_vs_delta_es;  // word level
};

struct SpectralResult {
  std::vector<SpectralRow> rows;
  Correlation idf_vs_ratio;  // subword level
};

std::vector<Ranking> ComputeRankings(const AnalysisInputs& inputs,
                                     size_t threads);
// Throws InputError("no rankable queries") when every query has |S_q| < 2.
ImportanceResult ComputeImportance(const AnalysisInputs& inputs,
                                   std::span<const ScoredQuery> scored,
                                   const RunConfig& config);
DeltaEsResult ComputeDeltaEs(const AnalysisInputs& inputs,
                             std::span<const ScoredQuery> scored);
SpectralResult ComputeSpectral(const AnalysisInputs& inputs,
                               std::span<const ScoredQuery> scored,
                               const RunConfig& config);
std::vector<MatchStatsRow> ComputeMatchStats(
    std::span<const ScoredQuery> scored, size_t threads);

// CSV writers. Headers are fixed.
void WriteImportanceCsv(const ImportanceResult& result, std::ostream& out);
void WriteDeltaEsCsv(const DeltaEsResult& result, std::ostream& out);
void WriteSpectralCsv(const SpectralResult& result, std::ostream& out);
void WriteMatchStatsCsv(std::span<const MatchStatsRow> rows, std::ostream& out);

// Subcommands. Each validates every input before creating any output file,
// then writes into config.out_dir. Returns the paths written.
std::vector<std::string> RunRerankCommand(const RunConfig& config);
std::vector<std::string> RunImportanceCommand(const RunConfig& config);
std::vector<std::string> RunDeltaEsCommand(const RunConfig& config);
std::vector<std::string> RunSpectralCommand(const RunConfig& config);
std::vector<std::string> RunMatchStatsCommand(const RunConfig& config);
std::vector<std::string> RunReportCommand(const RunConfig& config);

}  // namespace lilens

#endif  // LILENS_PIPELINE_H_
