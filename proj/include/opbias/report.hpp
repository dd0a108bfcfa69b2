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

#ifndef OPBIAS_REPORT_HPP
#define OPBIAS_REPORT_HPP

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "opbias/annotations.hpp"
#include "opbias/corpus.hpp"
#include "opbias/distribution.hpp"
#include "opbias/diversity.hpp"
#include "opbias/error.hpp"
#include "opbias/jsonl.hpp"
#include "opbias/length_check.hpp"
#include "opbias/ranking.hpp"
#include "opbias/similarity.hpp"

namespace opbias {

// ---------------------------------------------------------------------------
// Configuration

struct SummarySource {
  std::string model;
  std::string path;
};

struct RunConfig {
  std::string corpus_path;
  std::vector<SummarySource> summaries;
  std::string annotations_path;
  std::string output_dir;
  std::optional<std::string> gold_lengths_path;
  LengthBand length_band;
  PoolingVariant pooling = PoolingVariant::SentenceMean;
  // Downgrade missing (model, cluster) summaries from a run failure to
  // per-cell "missing" markers.
  bool allow_missing = false;
};

inline std::string_view to_string(PoolingVariant p) noexcept {
  return p == PoolingVariant::SentenceMean ? "sentence-mean" : "length-weighted";
}

inline std::optional<PoolingVariant> parse_pooling(std::string_view s) {
  if (s == "sentence-mean") return PoolingVariant::SentenceMean;
  if (s == "length-weighted") return PoolingVariant::LengthWeighted;
  return std::nullopt;
}

/// Parses "low:high", e.g. "0.90:1.10". Requires 0 <= low < high.
inline LengthBand parse_length_band(std::string_view s) {
  const auto colon = s.find(':');
  if (colon == std::string_view::npos) throw ValidationError("length band must be low:high");
  auto parse = [&](std::string_view part) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc() || ptr != part.data() + part.size()) {
      throw ValidationError("invalid length band bound '" + std::string(part) + "'");
    }
    return v;
  };
  LengthBand band{parse(s.substr(0, colon)), parse(s.substr(colon + 1))};
  if (!(band.low >= 0.0) || !(band.low < band.high)) {
    throw ValidationError("length band requires 0 <= low < high");
  }
  return band;
}

using GoldLengths = std::map<std::string, std::size_t>;

/// Gold summary lengths: line-delimited {"cluster_id": .., "gold_tokens": n}.
inline GoldLengths parse_gold_lengths(std::istream& in, const Corpus& corpus,
                                      const std::string& source = "<gold-lengths>") {
  GoldLengths gold;
  jsonl::for_each_record(in, source, [&](const jsonl::Json& rec, std::size_t line) {
    std::string cluster_id = jsonl::get_string(rec, "cluster_id", source, line);
    if (corpus.find_cluster(cluster_id) == nullptr) {
      throw ParseError(source, line, "unknown cluster '" + cluster_id + "'");
    }
    auto n = rec.find("gold_tokens");
    if (n == rec.end() || !n->is_number_integer() || n->get<long long>() <= 0) {
      throw ParseError(source, line, "'gold_tokens' must be a positive integer");
    }
    if (!gold.emplace(cluster_id, n->get<std::size_t>()).second) {
      throw ParseError(source, line, "duplicate gold length for cluster '" + cluster_id + "'");
    }
  });
  return gold;
}

inline GoldLengths load_gold_lengths(const std::string& path, const Corpus& corpus) {
  std::ifstream in = jsonl::open_input(path);
  return parse_gold_lengths(in, corpus, path);
}

// ---------------------------------------------------------------------------
// Report model

struct ClusterResult {
  std::string topic_id;
  std::string cluster_id;
  std::string model;
  OpinionSet source_opinions{OpinionSource::FromSources};
  OpinionSet summary_opinions{OpinionSource::FromSummary};
  DiversityScore diversity;
  double similarity = 0.0;
  std::size_t sentence_count = 0;
  std::optional<std::size_t> gold_tokens;
  std::optional<LengthCheck> length;
};

struct ModelCell {
  std::string model;
  bool missing = false;
  std::vector<std::string> missing_clusters;
  MacroScores diversity;
  double similarity = 0.0;
  std::size_t rank_by_diversity = 0;
  std::size_t rank_by_similarity = 0;
  StanceDistribution distribution;
  double distance_to_source = 0.0;
};

struct TopicResult {
  std::string topic_id;
  std::string display_name;
  std::string stance_target;
  std::size_t cluster_count = 0;
  std::size_t document_count = 0;
  std::optional<double> avg_docs_per_cluster;
  std::optional<StanceDistribution> source_distribution;
  std::vector<ModelCell> cells;  // one per model, run order
};

struct EvaluationReport {
  RunConfig config;
  std::string provenance;
  std::size_t embedding_dim = 0;
  std::vector<std::string> models;
  std::vector<TopicResult> topics;
  std::vector<ClusterResult> clusters;
  std::vector<std::string> warnings;
};

// ---------------------------------------------------------------------------
// Evaluation

namespace report_detail {

inline std::vector<StanceLabel> stances_of(std::span<const AnnotatedText> units) {
  std::vector<StanceLabel> out;
  out.reserve(units.size());
  for (const AnnotatedText& u : units) out.push_back(u.stance);
  return out;
}

inline std::map<std::string, double> present_scores(const std::vector<ModelCell>& cells,
                                                    double (*get)(const ModelCell&)) {
  std::map<std::string, double> scores;
  for (const ModelCell& c : cells) {
    if (!c.missing) scores.emplace(c.model, get(c));
  }
  return scores;
}

}  // namespace report_detail

/// Scores every (topic, model) pair of an already joined corpus. `config`
/// supplies the options and is echoed into the report.
inline EvaluationReport evaluate(const AnnotatedCorpus& joined,
                                 const RunConfig& config, const GoldLengths& gold = {}) {
  using report_detail::stances_of;

  EvaluationReport report;
  report.config = config;
  report.provenance = joined.provenance;
  report.embedding_dim = joined.embedding_dim;
  report.models = joined.models;
  report.warnings = joined.warnings;

  for (const Topic& topic : joined.topics) {
    TopicResult tr;
    tr.topic_id = topic.topic_id;
    tr.display_name = topic.display_name;
    tr.stance_target = topic.stance_target;

    const auto clusters = joined.clusters_of(topic.topic_id);
    tr.cluster_count = clusters.size();
    std::vector<StanceLabel> source_labels;
    for (const AnnotatedCluster* c : clusters) {
      tr.document_count += c->documents.size();
      for (const AnnotatedText& d : c->documents) source_labels.push_back(d.stance);
    }
    if (clusters.empty()) {
      report.warnings.push_back("topic '" + topic.topic_id + "' has no clusters");
    } else {
      tr.avg_docs_per_cluster =
          static_cast<double>(tr.document_count) / static_cast<double>(tr.cluster_count);
      tr.source_distribution = stance_distribution(source_labels);
    }

    for (const std::string& model : joined.models) {
      ModelCell cell;
      cell.model = model;
      std::vector<DiversityScore> scores;
      std::vector<double> cosines;
      std::vector<StanceLabel> summary_labels;

      for (const AnnotatedCluster* c : clusters) {
        const AnnotatedSummary* s = joined.find_summary(model, c->cluster_id);
        if (s == nullptr) {
          if (!config.allow_missing) {
            throw ValidationError("model '" + model + "' has no summary for cluster '" +
                                  c->cluster_id + "'");
          }
          cell.missing_clusters.push_back(c->cluster_id);
          continue;
        }
        ClusterResult cr;
        cr.topic_id = topic.topic_id;
        cr.cluster_id = c->cluster_id;
        cr.model = model;
        const auto src = stances_of(c->documents);
        const auto sum = stances_of(s->sentences);
        cr.source_opinions = opinion_set(src, OpinionSource::FromSources);
        cr.summary_opinions = opinion_set(sum, OpinionSource::FromSummary);
        cr.diversity = diversity_score(cr.source_opinions, cr.summary_opinions);
        cr.similarity = cosine_similarity(source_representation(*c),
                                          summary_representation(*s, config.pooling));
        cr.sentence_count = s->sentences.size();
        if (auto g = gold.find(c->cluster_id); g != gold.end()) {
          cr.gold_tokens = g->second;
          cr.length = length_check(s->raw_text, g->second, config.length_band);
          if (!cr.length->pass) {
            char ratio[32];
            std::snprintf(ratio, sizeof ratio, "%.4f", cr.length->ratio);
            report.warnings.push_back("summary of model '" + model + "' for cluster '" +
                                      c->cluster_id + "' has " +
                                      std::to_string(cr.length->tokens) + " tokens, ratio " +
                                      ratio + " to gold length " + std::to_string(g->second) +
                                      " is outside the length band");
          }
        }
        scores.push_back(cr.diversity);
        cosines.push_back(cr.similarity);
        summary_labels.insert(summary_labels.end(), sum.begin(), sum.end());
        report.clusters.push_back(std::move(cr));
      }

      if (clusters.empty() || !cell.missing_clusters.empty()) {
        cell.missing = true;
        if (!cell.missing_clusters.empty()) {
          std::string list;
          for (const std::string& id : cell.missing_clusters) list += " " + id;
          report.warnings.push_back("model '" + model + "' is missing summaries in topic '" +
                                    topic.topic_id + "':" + list);
        }
      } else {
        cell.diversity = aggregate_macro(scores);
        cell.similarity = numeric::canonical_mean(cosines);
        cell.distribution = stance_distribution(summary_labels);
        cell.distance_to_source = distribution_distance(*tr.source_distribution, cell.distribution);
      }
      tr.cells.push_back(std::move(cell));
    }

    const auto div_ranks = rank_models(report_detail::present_scores(
        tr.cells, [](const ModelCell& c) { return c.diversity.f1; }));
    const auto sim_ranks = rank_models(report_detail::present_scores(
        tr.cells, [](const ModelCell& c) { return c.similarity; }));
    for (ModelCell& cell : tr.cells) {
      if (cell.missing) continue;
      cell.rank_by_diversity = div_ranks.at(cell.model);
      cell.rank_by_similarity = sim_ranks.at(cell.model);
    }
    report.topics.push_back(std::move(tr));
  }
  return report;
}

/// Loads every input named by `config`, joins and scores them. Throws on the
/// first load, join or validation failure; nothing is written.
inline EvaluationReport run_evaluation(const RunConfig& config) {
  if (config.summaries.empty()) throw ValidationError("at least one summaries file is required");
  if (!(config.length_band.low < config.length_band.high)) {
    throw ValidationError("length band requires low < high");
  }
  const Corpus corpus = load_corpus(config.corpus_path);
  SummarySet summaries;
  for (const SummarySource& src : config.summaries) {
    summaries.merge(load_summaries(src.path, corpus, src.model));
  }
  for (const SummarySource& src : config.summaries) {
    if (std::find(summaries.models().begin(), summaries.models().end(), src.model) ==
        summaries.models().end()) {
      throw ValidationError("summaries file " + src.path + " holds no records");
    }
  }
  const AnnotationSet annotations = load_annotations(config.annotations_path);
  GoldLengths gold;
  if (config.gold_lengths_path) gold = load_gold_lengths(*config.gold_lengths_path, corpus);
  const AnnotatedCorpus joined = join_annotations(corpus, summaries, annotations);
  return evaluate(joined, config, gold);
}

// ---------------------------------------------------------------------------
// Rendering

namespace report_detail {

using Json = jsonl::OrderedJson;

inline Json distribution_json(const StanceDistribution& d) {
  Json j;
  for (StanceLabel s : kAllStances) j[std::string(to_string(s))] = d[s];
  j["unit_count"] = d.unit_count;
  return j;
}

inline Json opinions_json(OpinionSet s) {
  Json j = Json::array();
  for (StanceLabel l : s.labels()) j.push_back(std::string(to_string(l)));
  return j;
}

// Shortest round-trip decimal form.
inline std::string full_precision(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

inline std::string fixed4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

// Display width of UTF-8 text, one column per code point.
inline std::size_t display_width(std::string_view s) {
  std::size_t n = 0;
  for (unsigned char c : s) n += (c & 0xC0) != 0x80;
  return n;
}

inline std::string pad(std::string_view s, std::size_t width) {
  std::string out(s);
  const std::size_t w = display_width(s);
  if (w < width) out.append(width - w, ' ');
  return out;
}

inline constexpr std::string_view kMissingMarker = "\xE2\x80\x94";  // em dash

}  // namespace report_detail

inline jsonl::OrderedJson report_to_json(const EvaluationReport& r) {
  using report_detail::Json;
  Json j;
  j["format"] = "opbias-report/1";

  Json cfg;
  cfg["corpus"] = r.config.corpus_path;
  cfg["summaries"] = Json::array();
  for (const SummarySource& s : r.config.summaries) {
    Json e;
    e["model"] = s.model;
    e["path"] = s.path;
    cfg["summaries"].push_back(e);
  }
  cfg["annotations"] = r.config.annotations_path;
  cfg["gold_lengths"] = r.config.gold_lengths_path ? Json(*r.config.gold_lengths_path) : Json();
  cfg["length_band"] = {r.config.length_band.low, r.config.length_band.high};
  cfg["pooling"] = std::string(to_string(r.config.pooling));
  cfg["allow_missing"] = r.config.allow_missing;
  j["config"] = cfg;

  j["provenance"] = r.provenance;
  j["embedding_dim"] = r.embedding_dim;
  j["models"] = r.models;

  j["topics"] = Json::array();
  for (const TopicResult& t : r.topics) {
    Json jt;
    jt["topic_id"] = t.topic_id;
    jt["display_name"] = t.display_name;
    jt["stance_target"] = t.stance_target;
    jt["cluster_count"] = t.cluster_count;
    jt["document_count"] = t.document_count;
    jt["avg_docs_per_cluster"] = t.avg_docs_per_cluster ? Json(*t.avg_docs_per_cluster) : Json();
    jt["source_distribution"] =
        t.source_distribution ? report_detail::distribution_json(*t.source_distribution) : Json();
    jt["models"] = Json::array();
    for (const ModelCell& c : t.cells) {
      Json jc;
      jc["model"] = c.model;
      jc["status"] = c.missing ? "missing" : "ok";
      if (c.missing) {
        for (const char* key :
             {"diversity_f1", "diversity_precision", "diversity_recall", "diversity_f1_pooled",
              "similarity", "rank_by_diversity", "rank_by_similarity", "distribution",
              "distribution_distance_to_source"}) {
          jc[key] = nullptr;
        }
      } else {
        jc["diversity_f1"] = c.diversity.f1;
        jc["diversity_precision"] = c.diversity.precision;
        jc["diversity_recall"] = c.diversity.recall;
        jc["diversity_f1_pooled"] = c.diversity.pooled_f1;
        jc["similarity"] = c.similarity;
        jc["rank_by_diversity"] = c.rank_by_diversity;
        jc["rank_by_similarity"] = c.rank_by_similarity;
        jc["distribution"] = report_detail::distribution_json(c.distribution);
        jc["distribution_distance_to_source"] = c.distance_to_source;
      }
      jc["missing_clusters"] = c.missing_clusters;
      jt["models"].push_back(jc);
    }
    j["topics"].push_back(jt);
  }

  j["clusters"] = Json::array();
  for (const ClusterResult& c : r.clusters) {
    Json jc;
    jc["topic_id"] = c.topic_id;
    jc["cluster_id"] = c.cluster_id;
    jc["model"] = c.model;
    jc["source_opinions"] = report_detail::opinions_json(c.source_opinions);
    jc["summary_opinions"] = report_detail::opinions_json(c.summary_opinions);
    jc["tp"] = c.diversity.tp;
    jc["fp"] = c.diversity.fp;
    jc["fn"] = c.diversity.fn;
    jc["precision"] = c.diversity.precision;
    jc["recall"] = c.diversity.recall;
    jc["f1"] = c.diversity.f1;
    jc["similarity"] = c.similarity;
    jc["sentence_count"] = c.sentence_count;
    if (c.length) {
      Json jl;
      jl["tokens"] = c.length->tokens;
      jl["gold_tokens"] = *c.gold_tokens;
      jl["ratio"] = c.length->ratio;
      jl["pass"] = c.length->pass;
      jc["length"] = jl;
    } else {
      jc["length"] = nullptr;
    }
    j["clusters"].push_back(jc);
  }
  j["warnings"] = r.warnings;
  return j;
}

/// One row per topic x model x metric, tab separated. Source-document stance
/// proportions appear under the pseudo-model "source".
inline std::string report_to_tsv(const EvaluationReport& r) {
  using report_detail::full_precision;
  std::ostringstream out;
  out << "topic\tmodel\tmetric\tvalue\trank\n";
  auto row = [&](const std::string& topic, const std::string& model, std::string_view metric,
                 const std::string& value, std::size_t rank) {
    out << topic << '\t' << model << '\t' << metric << '\t' << value << '\t';
    if (rank > 0) out << rank;
    out << '\n';
  };
  for (const TopicResult& t : r.topics) {
    if (t.source_distribution) {
      for (StanceLabel s : kAllStances) {
        row(t.topic_id, "source", "proportion_" + std::string(to_string(s)),
            full_precision((*t.source_distribution)[s]), 0);
      }
    }
    for (const ModelCell& c : t.cells) {
      auto value = [&](double v) { return c.missing ? std::string("NA") : full_precision(v); };
      row(t.topic_id, c.model, "diversity_f1", value(c.diversity.f1), c.rank_by_diversity);
      row(t.topic_id, c.model, "diversity_precision", value(c.diversity.precision), 0);
      row(t.topic_id, c.model, "diversity_recall", value(c.diversity.recall), 0);
      row(t.topic_id, c.model, "diversity_f1_pooled", value(c.diversity.pooled_f1), 0);
      row(t.topic_id, c.model, "similarity", value(c.similarity), c.rank_by_similarity);
      row(t.topic_id, c.model, "distribution_distance_to_source", value(c.distance_to_source), 0);
      for (StanceLabel s : kAllStances) {
        row(t.topic_id, c.model, "proportion_" + std::string(to_string(s)),
            value(c.distribution[s]), 0);
      }
    }
  }
  return out.str();
}

/// Human-readable tables: diversity and similarity per topic with ranks in
/// brackets (4 decimals), stance distributions, then warnings.
inline std::string report_to_text(const EvaluationReport& r) {
  using report_detail::display_width;
  using report_detail::fixed4;
  using report_detail::kMissingMarker;
  using report_detail::pad;

  auto cell_text = [](const ModelCell& c, bool diversity) {
    if (c.missing) return std::string(kMissingMarker);
    return diversity ? fixed4(c.diversity.f1) + " (" + std::to_string(c.rank_by_diversity) + ")"
                     : fixed4(c.similarity) + " (" + std::to_string(c.rank_by_similarity) + ")";
  };

  std::size_t w0 = std::max<std::size_t>(display_width("Events"), display_width("Models"));
  for (const std::string& m : r.models) w0 = std::max(w0, display_width(m));

  struct Widths {
    std::size_t div, sim;
  };
  std::vector<Widths> widths;
  for (const TopicResult& t : r.topics) {
    Widths w{display_width("Opi Div"), display_width("Opi Sim")};
    for (const ModelCell& c : t.cells) {
      w.div = std::max(w.div, display_width(cell_text(c, true)));
      w.sim = std::max(w.sim, display_width(cell_text(c, false)));
    }
    const std::size_t name = display_width(t.display_name);
    if (name > w.div + 3 + w.sim) w.sim = name - w.div - 3;
    widths.push_back(w);
  }

  auto rstrip = [](std::string s) {
    while (!s.empty() && s.back() == ' ') s.pop_back();
    return s;
  };

  std::ostringstream out;
  std::string line = pad("Events", w0);
  for (std::size_t i = 0; i < r.topics.size(); ++i) {
    line += " | " + pad(r.topics[i].display_name, widths[i].div + 3 + widths[i].sim);
  }
  out << rstrip(line) << '\n';
  line = pad("Models", w0);
  for (const Widths& w : widths) line += " | " + pad("Opi Div", w.div) + " | " + pad("Opi Sim", w.sim);
  out << rstrip(line) << '\n';
  std::size_t rule = w0;
  for (const Widths& w : widths) rule += 3 + w.div + 3 + w.sim;
  out << std::string(rule, '-') << '\n';
  for (std::size_t m = 0; m < r.models.size(); ++m) {
    line = pad(r.models[m], w0);
    for (std::size_t i = 0; i < r.topics.size(); ++i) {
      const ModelCell& c = r.topics[i].cells[m];
      line += " | " + pad(cell_text(c, true), widths[i].div) + " | " +
              pad(cell_text(c, false), widths[i].sim);
    }
    out << rstrip(line) << '\n';
  }

  out << "\nStance distribution (support / against / neutral)\n";
  for (const TopicResult& t : r.topics) {
    out << '\n' << t.display_name << '\n';
    std::size_t w = display_width("source");
    for (const std::string& m : r.models) w = std::max(w, display_width(m));
    auto dist_line = [&](std::string_view who, const StanceDistribution& d,
                         std::optional<double> distance) {
      std::string l = "  " + pad(who, w) + "  " + fixed4(d[StanceLabel::Support]) + " / " +
                      fixed4(d[StanceLabel::Against]) + " / " + fixed4(d[StanceLabel::Neutral]) +
                      "  n=" + std::to_string(d.unit_count);
      if (distance) l += "  tv=" + fixed4(*distance);
      out << l << '\n';
    };
    if (t.source_distribution) {
      dist_line("source", *t.source_distribution, std::nullopt);
    } else {
      out << "  " << pad("source", w) << "  " << kMissingMarker << '\n';
    }
    for (const ModelCell& c : t.cells) {
      if (c.missing) {
        out << "  " << pad(c.model, w) << "  " << kMissingMarker << '\n';
      } else {
        dist_line(c.model, c.distribution, c.distance_to_source);
      }
    }
  }

  out << "\nWarnings (" << r.warnings.size() << ")\n";
  for (const std::string& w : r.warnings) out << "  " << w << '\n';
  return out.str();
}

inline constexpr std::string_view kReportJson = "report.json";
inline constexpr std::string_view kReportTsv = "report.tsv";
inline constexpr std::string_view kReportText = "report.txt";

/// Writes report.json, report.tsv and report.txt into `output_dir`
/// (created if needed). Each file is written to a temporary name and then
/// renamed into place.
inline void emit_report(const EvaluationReport& report, const std::string& output_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(output_dir, ec);
  if (ec) throw IoError("cannot create output directory " + output_dir + ": " + ec.message());

  const std::vector<std::pair<std::string_view, std::string>> files = {
      {kReportJson, report_to_json(report).dump(2) + "\n"},
      {kReportTsv, report_to_tsv(report)},
      {kReportText, report_to_text(report)},
  };
  for (const auto& [name, body] : files) {
    const fs::path final_path = fs::path(output_dir) / name;
    fs::path tmp = final_path;
    tmp += ".tmp";
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) throw IoError("cannot write " + tmp.string());
      out << body;
      out.flush();
      if (!out) throw IoError("write failure on " + tmp.string());
    }
    fs::rename(tmp, final_path, ec);
    if (ec) throw IoError("cannot rename " + tmp.string() + ": " + ec.message());
  }
}

}  // namespace opbias

#endif  // OPBIAS_REPORT_HPP
