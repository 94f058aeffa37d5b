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

#include "lilens/pipeline.h"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <ostream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "lilens/embedding_io.h"
#include "lilens/errors.h"
#include "lilens/parallel.h"
#include "lilens/run_io.h"
#include "lilens/text_format.h"

namespace lilens {

namespace fs = std::filesystem;

AnalysisInputs LoadInputs(const RunConfig& config) {
  for (const auto* path :
       {&config.queries_path, &config.docs_path, &config.run_path}) {
    if (path->empty()) {
      throw InputError("missing required input path (--queries, --docs, --run)");
    }
  }
  if (config.threads == 0) throw InputError("--threads must be at least 1");

  AnalysisInputs inputs;
  inputs.queries = LoadEmbeddings(config.queries_path);
  inputs.docs = LoadEmbeddings(config.docs_path);
  inputs.runs = LoadRun(config.run_path);
  if (inputs.queries.dim() != inputs.docs.dim() && !inputs.queries.empty() &&
      !inputs.docs.empty()) {
    throw InputError("dimension mismatch: " + config.queries_path + " has dim " +
                     std::to_string(inputs.queries.dim()) + ", " +
                     config.docs_path + " has dim " +
                     std::to_string(inputs.docs.dim()));
  }
  for (const auto& set : inputs.runs) {
    if (inputs.queries.Find(set.query_id) == nullptr) {
      throw InputError(config.run_path + ": query '" + set.query_id +
                       "' not found in " + config.queries_path);
    }
  }
  try {
    ValidateCandidates(inputs.runs, inputs.docs);
  } catch (const InputError& e) {
    throw InputError(config.run_path + ": " + e.what());
  }
  if (!config.stats_path.empty()) {
    inputs.stats = ReadCorpusStats(config.stats_path);
  } else if (!inputs.docs.empty()) {
    inputs.stats = ComputeCorpusStats(inputs.docs);
  }
  return inputs;
}

std::vector<ScoredQuery> ScoreAll(const AnalysisInputs& inputs,
                                  size_t threads) {
  std::vector<ScoredQuery> scored(inputs.runs.size());
  // Parallel across queries; each query is traced single-threaded so the
  // worker count never changes the arithmetic.
  ParallelFor(inputs.runs.size(), threads, [&](size_t k) {
    const auto& set = inputs.runs[k];
    scored[k] = ScoreQuery(*inputs.queries.Find(set.query_id), set,
                           inputs.docs, 1);
  });
  return scored;
}

Correlation Correlate(const std::vector<double>& xs,
                      const std::vector<double>& ys) {
  Correlation c;
  c.n_points = xs.size();
  if (xs.size() < 2) {
    c.reason = "insufficient points";
    return c;
  }
  try {
    c.r = RoundTo(Pearson(xs, ys), 4);
  } catch (const std::invalid_argument&) {
    c.reason = "zero variance";
  }
  return c;
}

std::vector<Ranking> ComputeRankings(const AnalysisInputs& inputs,
                                     size_t threads) {
  std::vector<Ranking> rankings(inputs.runs.size());
  ParallelFor(inputs.runs.size(), threads, [&](size_t k) {
    const auto& set = inputs.runs[k];
    rankings[k] = Rerank(*inputs.queries.Find(set.query_id), set, inputs.docs);
  });
  return rankings;
}

ImportanceResult ComputeImportance(const AnalysisInputs& inputs,
                                   std::span<const ScoredQuery> scored,
                                   const RunConfig& config) {
  ImportanceResult result;
  std::vector<size_t> rankable;
  for (size_t k = 0; k < scored.size(); ++k) {
    if (scored[k].traces.size() >= 2) {
      rankable.push_back(k);
    } else {
      result.skipped_queries.push_back(scored[k].query->id());
    }
  }
  if (rankable.empty()) throw InputError("no rankable queries");

  std::vector<std::vector<WordImportance>> per_query(rankable.size());
  ParallelFor(rankable.size(), config.threads, [&](size_t k) {
    per_query[k] = QueryImportance(scored[rankable[k]], config.tau_ap_mode);
  });
  for (auto& results : per_query) {
    for (auto& r : results) result.per_query.push_back(std::move(r));
  }
  result.rows = AggregateImportance(result.per_query, &inputs.stats);

  std::vector<double> xs, ys;
  for (const auto& row : result.rows) {
    if (row.idf_word) {
      xs.push_back(*row.idf_word);
      ys.push_back(row.mean_tau_ap);
    }
  }
  result.idf_vs_tau_ap = Correlate(xs, ys);
  return result;
}

DeltaEsResult ComputeDeltaEs(const AnalysisInputs& inputs,
                             std::span<const ScoredQuery> scored) {
  DeltaEsResult result;
  result.subwords = DeltaEsSubwords(scored, &inputs.stats);
  result.words = DeltaEsWords(scored, result.subwords, &inputs.stats);
  std::vector<double> xs, ys;
  for (const auto& row : result.words) {
    if (row.idf && row.delta_es) {
      xs.push_back(*row.idf);
      ys.push_back(*row.delta_es);
    }
  }
  result.idf_vs_delta_es = Correlate(xs, ys);
  return result;
}

SpectralResult ComputeSpectral(const AnalysisInputs& inputs,
                               std::span<const ScoredQuery> scored,
                               const RunConfig& config) {
  SpectralResult result;
  SpectralOptions options;
  options.cap = config.spectral_cap;
  options.seed = config.seed;
  options.threads = config.threads;
  result.rows = SpectralRatios(scored, inputs.docs, &inputs.stats, options);
  std::vector<double> xs, ys;
  for (const auto& row : result.rows) {
    if (row.idf_subword) {
      xs.push_back(*row.idf_subword);
      ys.push_back(row.ratio);
    }
  }
  result.idf_vs_ratio = Correlate(xs, ys);
  return result;
}

std::vector<MatchStatsRow> ComputeMatchStats(
    std::span<const ScoredQuery> scored, size_t threads) {
  std::vector<std::vector<MatchStatsRow>> per_query(scored.size());
  ParallelFor(scored.size(), threads,
              [&](size_t k) { per_query[k] = MatchStats(scored[k]); });
  std::vector<MatchStatsRow> rows;
  for (auto& q : per_query) {
    for (auto& r : q) rows.push_back(std::move(r));
  }
  return rows;
}

// ---------------------------------------------------------------------------
// CSV output.

void WriteImportanceCsv(const ImportanceResult& result, std::ostream& out) {
  std::map<std::string_view, const TermImportanceRow*> by_word;
  for (const auto& row : result.rows) by_word[row.word] = &row;
  out << "word,query_id,tau_ap,mean_tau_ap,idf_word,n_queries\n";
  for (const auto& row : result.rows) {
    for (const auto& [qid, tau] : row.per_query_tau_ap) {
      out << CsvField(row.word) << ',' << CsvField(qid) << ','
          << FormatShortest(tau) << ',' << FormatShortest(row.mean_tau_ap)
          << ',' << FormatShortest(row.idf_word) << ',' << row.n_queries()
          << '\n';
    }
  }
}

void WriteDeltaEsCsv(const DeltaEsResult& result, std::ostream& out) {
  out << "term,granularity,delta_es,partial,n_pairs_used,n_pairs_skipped,idf\n";
  for (const auto& row : result.subwords) {
    out << CsvField(row.term) << ",subword," << FormatShortest(row.delta_es)
        << ",0," << row.n_pairs_used << ',' << row.n_pairs_skipped << ','
        << FormatShortest(row.idf) << '\n';
  }
  for (const auto& row : result.words) {
    out << CsvField(row.word) << ",word," << FormatShortest(row.delta_es)
        << ',' << (row.partial ? 1 : 0) << ',' << row.n_pairs_used << ','
        << row.n_pairs_skipped << ',' << FormatShortest(row.idf) << '\n';
  }
}

void WriteSpectralCsv(const SpectralResult& result, std::ostream& out) {
  out << "term,m,ratio,idf_subword\n";
  for (const auto& row : result.rows) {
    out << CsvField(row.term) << ',' << row.m << ','
        << FormatShortest(row.ratio) << ',' << FormatShortest(row.idf_subword)
        << '\n';
  }
}

void WriteMatchStatsCsv(std::span<const MatchStatsRow> rows,
                        std::ostream& out) {
  out << "query_id,position,token,exact_match_freq,other_query_term_freq,"
         "top_matches\n";
  for (const auto& row : rows) {
    // top_matches: "token:freq" pairs joined by '|'.
    std::string top;
    for (const auto& [text, freq] : row.top_matches) {
      if (!top.empty()) top += '|';
      top += text;
      top += ':';
      top += FormatShortest(freq);
    }
    out << CsvField(row.query_id) << ',' << row.position << ','
        << CsvField(row.token) << ',' << FormatShortest(row.exact_match_freq)
        << ',' << FormatShortest(row.other_query_term_freq) << ','
        << CsvField(top) << '\n';
  }
}

// ---------------------------------------------------------------------------
// Commands.

namespace {

using nlohmann::ordered_json;

ordered_json CorrelationJson(const Correlation& c) {
  ordered_json j;
  if (c.r) {
    j["r"] = *c.r;
  } else {
    j["reason"] = c.reason;
  }
  j["n_points"] = c.n_points;
  return j;
}

ordered_json ConfigJson(const RunConfig& config) {
  return ordered_json{
      {"queries", config.queries_path},
      {"docs", config.docs_path},
      {"run", config.run_path},
      {"stats", config.stats_path},
      {"threads", config.threads},
      {"seed", config.seed},
      {"tau_ap_mode",
       config.tau_ap_mode == TauApMode::kSymmetric ? "sym" : "asym"},
      {"spectral_cap", config.spectral_cap},
  };
}

// Writes to a temporary sibling and renames, so a failure never leaves a
// partial file under the final name.
template <typename Fn>
std::string WriteOutput(const RunConfig& config, const std::string& name,
                        Fn&& write) {
  fs::create_directories(config.out_dir);
  const fs::path path = fs::path(config.out_dir) / name;
  const fs::path tmp = fs::path(config.out_dir) / (name + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw InputError("cannot open " + tmp.string() + " for writing");
    write(out);
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  fs::rename(tmp, path);
  return path.string();
}

std::string WriteSummary(const RunConfig& config, const std::string& name,
                         const ordered_json& body) {
  return WriteOutput(config, name,
                     [&](std::ostream& out) { out << body.dump(2) << '\n'; });
}

}  // namespace

std::vector<std::string> RunRerankCommand(const RunConfig& config) {
  const AnalysisInputs inputs = LoadInputs(config);
  const auto rankings = ComputeRankings(inputs, config.threads);
  return {WriteOutput(config, "run.txt",
                      [&](std::ostream& out) { WriteRun(rankings, out); })};
}

std::vector<std::string> RunImportanceCommand(const RunConfig& config) {
  const AnalysisInputs inputs = LoadInputs(config);
  const auto scored = ScoreAll(inputs, config.threads);
  const ImportanceResult result = ComputeImportance(inputs, scored, config);
  for (const auto& qid : result.skipped_queries) {
    std::cerr << "skipping query '" << qid << "': fewer than 2 candidates\n";
  }
  ordered_json summary;
  summary["pearson_idf_tauap"] = CorrelationJson(result.idf_vs_tau_ap);
  summary["skipped_queries"] = result.skipped_queries;
  return {WriteOutput(config, "importance.csv",
                      [&](std::ostream& out) {
                        WriteImportanceCsv(result, out);
                      }),
          WriteSummary(config, "importance_summary.json", summary)};
}

std::vector<std::string> RunDeltaEsCommand(const RunConfig& config) {
  const AnalysisInputs inputs = LoadInputs(config);
  const auto scored = ScoreAll(inputs, config.threads);
  const DeltaEsResult result = ComputeDeltaEs(inputs, scored);
  ordered_json summary;
  summary["pearson_idf_deltaes"] = CorrelationJson(result.idf_vs_delta_es);
  return {WriteOutput(config, "delta_es.csv",
                      [&](std::ostream& out) { WriteDeltaEsCsv(result, out); }),
          WriteSummary(config, "delta_es_summary.json", summary)};
}

std::vector<std::string> RunSpectralCommand(const RunConfig& config) {
  const AnalysisInputs inputs = LoadInputs(config);
  const auto scored = ScoreAll(inputs, config.threads);
  const SpectralResult result = ComputeSpectral(inputs, scored, config);
  ordered_json summary;
  summary["pearson_idf_spectral"] = CorrelationJson(result.idf_vs_ratio);
  return {WriteOutput(config, "spectral.csv",
                      [&](std::ostream& out) { WriteSpectralCsv(result, out); }),
          WriteSummary(config, "spectral_summary.json", summary)};
}

std::vector<std::string> RunMatchStatsCommand(const RunConfig& config) {
  const AnalysisInputs inputs = LoadInputs(config);
  const auto scored = ScoreAll(inputs, config.threads);
  const auto rows = ComputeMatchStats(scored, config.threads);
  return {WriteOutput(config, "matches.csv", [&](std::ostream& out) {
    WriteMatchStatsCsv(rows, out);
  })};
}

std::vector<std::string> RunReportCommand(const RunConfig& config) {
  const AnalysisInputs inputs = LoadInputs(config);
  const auto scored = ScoreAll(inputs, config.threads);

  ordered_json report;
  report["toolkit"] = kToolkitName;
  report["version"] = kToolkitVersion;
  report["config"] = ConfigJson(config);

  ordered_json correlations;
  size_t n_words = 0;
  try {
    const ImportanceResult importance =
        ComputeImportance(inputs, scored, config);
    correlations["pearson_idf_tauap"] =
        CorrelationJson(importance.idf_vs_tau_ap);
    n_words = importance.rows.size();
  } catch (const InputError& e) {
    correlations["pearson_idf_tauap"] =
        ordered_json{{"reason", e.what()}, {"n_points", 0}};
  }
  const DeltaEsResult delta = ComputeDeltaEs(inputs, scored);
  correlations["pearson_idf_deltaes"] = CorrelationJson(delta.idf_vs_delta_es);
  const SpectralResult spectral = ComputeSpectral(inputs, scored, config);
  correlations["pearson_idf_spectral"] = CorrelationJson(spectral.idf_vs_ratio);

  size_t n_candidates = 0;
  for (const auto& set : inputs.runs) n_candidates += set.doc_ids.size();
  report["counts"] = ordered_json{
      {"queries", inputs.runs.size()},
      {"candidates", n_candidates},
      {"documents", inputs.docs.size()},
      {"importance_words", n_words},
      {"delta_es_subwords", delta.subwords.size()},
      {"delta_es_words", delta.words.size()},
      {"spectral_terms", spectral.rows.size()},
  };
  report["correlations"] = std::move(correlations);
  return {WriteSummary(config, "report.json", report)};
}

}  // namespace lilens
