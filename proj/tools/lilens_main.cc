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

// lilens: late-interaction scoring and matching diagnostics.
//
//   lilens rerank      --queries q.lieb --docs d.lieb --run bm25.run --out-dir out
//   lilens importance  ... (also: delta-es, spectral, match-stats, report)
//   lilens synth       --out-dir fixtures --seed 7
//
// Exit status: 0 success, 2 input error, 3 internal error.

#include <cstdlib>
#include <exception>
#include <functional>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lilens/errors.h"
#include "lilens/pipeline.h"
#include "lilens/synth.h"

namespace {

constexpr int kExitInputError = 2;
constexpr int kExitInternalError = 3;

void AddAnalysisFlags(CLI::App* cmd, lilens::RunConfig& config,
                      std::string& tau_mode) {
  cmd->add_option("--queries", config.queries_path, "Query LIEB file")
      ->required();
  cmd->add_option("--docs", config.docs_path, "Document LIEB file")
      ->required();
  cmd->add_option("--run", config.run_path, "First-stage TREC run file")
      ->required();
  cmd->add_option("--stats", config.stats_path,
                  "Corpus stats TSV (default: derived from --docs)");
  cmd->add_option("--out-dir", config.out_dir, "Output directory")
      ->capture_default_str();
  cmd->add_option("--threads", config.threads, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--seed", config.seed, "Seed for spectral sampling")
      ->capture_default_str();
  cmd->add_option("--tau-ap-mode", tau_mode, "tau_ap direction")
      ->check(CLI::IsMember({"asym", "sym"}))
      ->capture_default_str();
  cmd->add_option("--spectral-cap", config.spectral_cap,
                  "Max occurrences per term in the spectral pool")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Late-interaction retrieval scoring and diagnostics"};
  app.require_subcommand(1);
  app.set_version_flag("--version", lilens::kToolkitVersion);

  lilens::RunConfig config;
  std::string tau_mode = "asym";

  using Command = std::function<std::vector<std::string>(const lilens::RunConfig&)>;
  const std::map<std::string, std::pair<std::string, Command>> commands = {
      {"rerank", {"Re-rank candidates with MaxSim", lilens::RunRerankCommand}},
      {"importance",
       {"Masking-based term importance (tau_ap)", lilens::RunImportanceCommand}},
      {"delta-es",
       {"Exact vs. soft match statistic", lilens::RunDeltaEsCommand}},
      {"spectral",
       {"Spectral concentration of term embeddings",
        lilens::RunSpectralCommand}},
      {"match-stats",
       {"Per query token match statistics", lilens::RunMatchStatsCommand}},
      {"report", {"Correlation summary as JSON", lilens::RunReportCommand}},
  };
  std::map<CLI::App*, const Command*> handlers;
  for (const auto& [name, entry] : commands) {
    CLI::App* cmd = app.add_subcommand(name, entry.first);
    AddAnalysisFlags(cmd, config, tau_mode);
    handlers[cmd] = &entry.second;
  }

  lilens::SynthConfig synth;
  std::string synth_dir = ".";
  CLI::App* synth_cmd =
      app.add_subcommand("synth", "Generate a synthetic fixture corpus");
  synth_cmd->add_option("--out-dir", synth_dir, "Output directory")
      ->capture_default_str();
  synth_cmd->add_option("--seed", synth.seed, "Generator seed")
      ->capture_default_str();
  synth_cmd->add_option("--n-docs", synth.n_docs)->capture_default_str();
  synth_cmd->add_option("--n-queries", synth.n_queries)->capture_default_str();
  synth_cmd->add_option("--vocab", synth.vocab_size)->capture_default_str();
  synth_cmd->add_option("--dim", synth.dim)->capture_default_str();
  synth_cmd->add_option("--candidates", synth.candidates_per_query)
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInputError;
  }

  try {
    if (synth_cmd->parsed()) {
      lilens::WriteSynthCorpus(lilens::GenerateSynthCorpus(synth), synth_dir);
      std::cout << "wrote synthetic corpus to " << synth_dir << '\n';
      return EXIT_SUCCESS;
    }
    config.tau_ap_mode = tau_mode == "sym" ? lilens::TauApMode::kSymmetric
                                           : lilens::TauApMode::kAsymmetric;
    for (const auto& [cmd, handler] : handlers) {
      if (!cmd->parsed()) continue;
      for (const auto& path : (*handler)(config)) {
        std::cout << "wrote " << path << '\n';
      }
    }
  } catch (const lilens::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternalError;
  }
  return EXIT_SUCCESS;
}
