/*
 * Copyright 2026 The opbias Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Command-line front end: evaluate, stats, validate.
//
// Exit codes: 0 success, 1 validation error, 2 I/O error.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "opbias.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;

std::vector<opbias::SummarySource> parse_summary_specs(const std::vector<std::string>& specs) {
  std::vector<opbias::SummarySource> out;
  for (const std::string& arg : specs) {
    const auto eq = arg.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == arg.size()) {
      throw opbias::ValidationError("--summaries expects <model>=<path>, got '" + arg + "'");
    }
    out.push_back({arg.substr(0, eq), arg.substr(eq + 1)});
  }
  return out;
}

void print_warnings(const std::vector<std::string>& warnings) {
  for (const std::string& w : warnings) std::cerr << "warning: " << w << '\n';
}

int run_evaluate(const opbias::RunConfig& config) {
  const opbias::EvaluationReport report = opbias::run_evaluation(config);
  opbias::emit_report(report, config.output_dir);
  print_warnings(report.warnings);
  std::cout << "wrote " << config.output_dir << "/{" << opbias::kReportJson << ","
            << opbias::kReportTsv << "," << opbias::kReportText << "}\n";
  return kExitOk;
}

int run_stats(const std::string& corpus_path) {
  const opbias::Corpus corpus = opbias::load_corpus(corpus_path);
  const opbias::CorpusStats stats = opbias::corpus_stats(corpus);
  std::size_t width = 5;
  for (const auto& t : stats) width = std::max(width, t.display_name.size());
  std::printf("%-*s  %8s  %10s\n", static_cast<int>(width), "Topic", "Clusters", "Avg docs");
  for (const auto& t : stats) {
    if (t.avg_docs_per_cluster) {
      std::printf("%-*s  %8zu  %10.2f\n", static_cast<int>(width), t.display_name.c_str(),
                  t.cluster_count, *t.avg_docs_per_cluster);
    } else {
      std::printf("%-*s  %8zu  %10s\n", static_cast<int>(width), t.display_name.c_str(),
                  t.cluster_count, "n/a");
    }
  }
  return kExitOk;
}

int run_validate(const std::string& corpus_path, const std::vector<opbias::SummarySource>& sources,
                 const std::optional<std::string>& annotations_path,
                 const std::optional<std::string>& gold_path) {
  const opbias::Corpus corpus = opbias::load_corpus(corpus_path);
  std::cout << "corpus: " << corpus.topics().size() << " topics, " << corpus.clusters().size()
            << " clusters, " << corpus.document_count() << " documents\n";
  opbias::SummarySet summaries;
  for (const auto& src : sources) {
    summaries.merge(opbias::load_summaries(src.path, corpus, src.model));
  }
  if (!sources.empty()) {
    std::cout << "summaries: " << summaries.summaries().size() << " across "
              << summaries.models().size() << " models\n";
  }
  if (gold_path) {
    const auto gold = opbias::load_gold_lengths(*gold_path, corpus);
    std::cout << "gold lengths: " << gold.size() << " clusters\n";
  }
  std::vector<std::string> warnings = summaries.warnings();
  if (annotations_path) {
    const opbias::AnnotationSet ann = opbias::load_annotations(*annotations_path);
    std::cout << "annotations: " << ann.size() << " units, dim " << ann.embedding_dim() << '\n';
    const opbias::AnnotatedCorpus joined = opbias::join_annotations(corpus, summaries, ann);
    warnings = joined.warnings;
    std::cout << "join: ok\n";
  }
  print_warnings(warnings);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Opinion diversity and similarity evaluation for summarisation models"};
  app.require_subcommand(1);

  opbias::RunConfig config;
  std::vector<std::string> summary_specs;
  std::string band_text = "0.90:1.10";
  std::string pooling_text = "sentence-mean";
  std::string gold_path;

  auto* evaluate = app.add_subcommand("evaluate", "Score summaries and write reports");
  evaluate->add_option("--corpus", config.corpus_path, "Corpus file (JSONL)")->required();
  evaluate->add_option("--summaries", summary_specs, "<model>=<path>, repeatable")->required();
  evaluate->add_option("--annotations", config.annotations_path, "Annotation file (JSONL)")
      ->required();
  evaluate->add_option("--out", config.output_dir, "Output directory")->required();
  evaluate->add_option("--gold-lengths", gold_path, "Gold summary lengths (JSONL)");
  evaluate->add_option("--length-band", band_text, "Allowed length ratio low:high")
      ->capture_default_str();
  evaluate->add_option("--pooling", pooling_text, "sentence-mean | length-weighted")
      ->capture_default_str();
  evaluate->add_flag("--allow-missing", config.allow_missing,
                     "Mark missing summaries per cell instead of failing");

  std::string stats_corpus;
  auto* stats = app.add_subcommand("stats", "Cluster counts and average cluster size per topic");
  stats->add_option("--corpus", stats_corpus, "Corpus file (JSONL)")->required();

  std::string v_corpus, v_annotations, v_gold;
  std::vector<std::string> v_specs;
  auto* validate = app.add_subcommand("validate", "Check input files without scoring");
  validate->add_option("--corpus", v_corpus, "Corpus file (JSONL)")->required();
  validate->add_option("--summaries", v_specs, "<model>=<path>, repeatable");
  validate->add_option("--annotations", v_annotations, "Annotation file (JSONL)");
  validate->add_option("--gold-lengths", v_gold, "Gold summary lengths (JSONL)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (evaluate->parsed()) {
      config.summaries = parse_summary_specs(summary_specs);
      config.length_band = opbias::parse_length_band(band_text);
      auto pooling = opbias::parse_pooling(pooling_text);
      if (!pooling) throw opbias::ValidationError("unknown pooling '" + pooling_text + "'");
      config.pooling = *pooling;
      if (!gold_path.empty()) config.gold_lengths_path = gold_path;
      return run_evaluate(config);
    }
    if (stats->parsed()) return run_stats(stats_corpus);
    if (validate->parsed()) {
      return run_validate(v_corpus, parse_summary_specs(v_specs),
                          v_annotations.empty() ? std::nullopt : std::optional(v_annotations),
                          v_gold.empty() ? std::nullopt : std::optional(v_gold));
    }
  } catch (const opbias::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitValidation;
}
