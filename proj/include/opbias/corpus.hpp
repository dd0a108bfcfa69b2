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

#ifndef OPBIAS_CORPUS_HPP
#define OPBIAS_CORPUS_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "opbias/error.hpp"
#include "opbias/jsonl.hpp"
#include "opbias/sentence_splitter.hpp"
#include "opbias/text.hpp"

namespace opbias {

struct Topic {
  std::string topic_id;
  std::string display_name;
  // Classifier target applied to this topic; may differ from the topic itself.
  std::string stance_target;

  friend bool operator==(const Topic&, const Topic&) = default;
};

struct SourceDoc {
  std::string doc_id;
  std::string text;

  friend bool operator==(const SourceDoc&, const SourceDoc&) = default;
};

struct Cluster {
  std::string cluster_id;
  std::string topic_id;
  std::vector<SourceDoc> documents;

  friend bool operator==(const Cluster&, const Cluster&) = default;
};

/// Topics and clusters in file order. Immutable once constructed; the
/// constructor enforces every referential and uniqueness invariant.
///
/// Cluster ids are unique across the whole corpus (summaries and annotation
/// unit ids reference clusters without naming a topic).
class Corpus {
 public:
  Corpus() = default;

  Corpus(std::vector<Topic> topics, std::vector<Cluster> clusters)
      : topics_(std::move(topics)), clusters_(std::move(clusters)) {
    for (std::size_t i = 0; i < topics_.size(); ++i) {
      const Topic& t = topics_[i];
      if (t.topic_id.empty()) throw ValidationError("topic with empty topic_id");
      if (text::trim(t.stance_target).empty()) {
        throw ValidationError("topic '" + t.topic_id + "' has an empty stance_target");
      }
      if (!topic_index_.emplace(t.topic_id, i).second) {
        throw ValidationError("duplicate topic_id '" + t.topic_id + "'");
      }
    }
    std::unordered_map<std::string, std::string> doc_owner;
    for (std::size_t i = 0; i < clusters_.size(); ++i) {
      const Cluster& c = clusters_[i];
      if (c.cluster_id.empty()) throw ValidationError("cluster with empty cluster_id");
      if (!cluster_index_.emplace(c.cluster_id, i).second) {
        throw ValidationError("duplicate cluster_id '" + c.cluster_id + "'");
      }
      if (!topic_index_.contains(c.topic_id)) {
        throw ValidationError("cluster '" + c.cluster_id + "' references unknown topic '" +
                              c.topic_id + "'");
      }
      if (c.documents.empty()) {
        throw ValidationError("cluster '" + c.cluster_id + "' has no documents");
      }
      for (const SourceDoc& d : c.documents) {
        if (d.doc_id.empty()) {
          throw ValidationError("document with empty doc_id in cluster '" + c.cluster_id + "'");
        }
        if (text::trim(d.text).empty()) {
          throw ValidationError("document '" + d.doc_id + "' has empty text");
        }
        auto [it, inserted] = doc_owner.emplace(d.doc_id, c.cluster_id);
        if (!inserted) {
          throw ValidationError("duplicate doc_id '" + d.doc_id + "' (clusters '" + it->second +
                                "' and '" + c.cluster_id + "')");
        }
      }
    }
  }

  const std::vector<Topic>& topics() const noexcept { return topics_; }
  const std::vector<Cluster>& clusters() const noexcept { return clusters_; }

  const Topic* find_topic(std::string_view id) const {
    auto it = topic_index_.find(std::string(id));
    return it == topic_index_.end() ? nullptr : &topics_[it->second];
  }

  const Cluster* find_cluster(std::string_view id) const {
    auto it = cluster_index_.find(std::string(id));
    return it == cluster_index_.end() ? nullptr : &clusters_[it->second];
  }

  std::vector<const Cluster*> clusters_of(std::string_view topic_id) const {
    std::vector<const Cluster*> out;
    for (const Cluster& c : clusters_) {
      if (c.topic_id == topic_id) out.push_back(&c);
    }
    return out;
  }

  std::size_t document_count() const noexcept {
    std::size_t n = 0;
    for (const Cluster& c : clusters_) n += c.documents.size();
    return n;
  }

  friend bool operator==(const Corpus& a, const Corpus& b) {
    return a.topics_ == b.topics_ && a.clusters_ == b.clusters_;
  }

 private:
  std::vector<Topic> topics_;
  std::vector<Cluster> clusters_;
  std::unordered_map<std::string, std::size_t> topic_index_;
  std::unordered_map<std::string, std::size_t> cluster_index_;
};

/// Parses the line-delimited corpus format:
///   {"kind":"topic","topic_id":..,"display_name":..,"stance_target":..}
///   {"kind":"doc","doc_id":..,"topic_id":..,"cluster_id":..,"text":..}
/// Clusters are formed from doc records in order of first appearance.
inline Corpus parse_corpus(std::istream& in, const std::string& source = "<corpus>") {
  std::vector<Topic> topics;
  std::vector<Cluster> clusters;
  std::unordered_map<std::string, std::size_t> cluster_pos;

  jsonl::for_each_record(in, source, [&](const jsonl::Json& rec, std::size_t line) {
    const std::string kind = jsonl::get_string(rec, "kind", source, line);
    if (kind == "topic") {
      topics.push_back({jsonl::get_string(rec, "topic_id", source, line),
                        jsonl::get_string(rec, "display_name", source, line),
                        jsonl::get_string(rec, "stance_target", source, line)});
      return;
    }
    if (kind != "doc") throw ParseError(source, line, "unknown record kind '" + kind + "'");

    std::string doc_id = jsonl::get_string(rec, "doc_id", source, line);
    std::string topic_id = jsonl::get_string(rec, "topic_id", source, line);
    std::string cluster_id = jsonl::get_string(rec, "cluster_id", source, line);
    std::string body;
    try {
      body = text::normalize(jsonl::get_string(rec, "text", source, line));
    } catch (const ParseError&) {
      throw;
    } catch (const ValidationError& e) {
      throw ParseError(source, line, e.what());
    }
    if (body.empty()) throw ParseError(source, line, "document '" + doc_id + "' has empty text");

    auto [it, inserted] = cluster_pos.emplace(cluster_id, clusters.size());
    if (inserted) {
      clusters.push_back({cluster_id, topic_id, {}});
    } else if (clusters[it->second].topic_id != topic_id) {
      throw ParseError(source, line,
                       "cluster '" + cluster_id + "' assigned to topics '" +
                           clusters[it->second].topic_id + "' and '" + topic_id + "'");
    }
    clusters[it->second].documents.push_back({std::move(doc_id), std::move(body)});
  });
  return Corpus(std::move(topics), std::move(clusters));
}

inline Corpus load_corpus(const std::string& path) {
  std::ifstream in = jsonl::open_input(path);
  return parse_corpus(in, path);
}

/// Inverse of parse_corpus: topic records first, then docs cluster by cluster.
inline std::string to_jsonl(const Corpus& corpus) {
  std::ostringstream out;
  for (const Topic& t : corpus.topics()) {
    jsonl::OrderedJson rec;
    rec["kind"] = "topic";
    rec["topic_id"] = t.topic_id;
    rec["display_name"] = t.display_name;
    rec["stance_target"] = t.stance_target;
    out << rec.dump() << '\n';
  }
  for (const Cluster& c : corpus.clusters()) {
    for (const SourceDoc& d : c.documents) {
      jsonl::OrderedJson rec;
      rec["kind"] = "doc";
      rec["doc_id"] = d.doc_id;
      rec["topic_id"] = c.topic_id;
      rec["cluster_id"] = c.cluster_id;
      rec["text"] = d.text;
      out << rec.dump() << '\n';
    }
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Summaries

struct SummaryDoc {
  std::string model_name;
  std::string cluster_id;
  std::string raw_text;
  std::vector<Sentence> sentences;
  bool presplit = false;

  friend bool operator==(const SummaryDoc&, const SummaryDoc&) = default;
};

/// All summaries of a run, keyed by (model, cluster). Models are kept in
/// order of first appearance.
class SummarySet {
 public:
  void add(SummaryDoc doc) {
    auto key = std::make_pair(doc.model_name, doc.cluster_id);
    if (index_.contains(key)) {
      throw ValidationError("duplicate summary for model '" + doc.model_name + "' and cluster '" +
                            doc.cluster_id + "'");
    }
    if (std::find(models_.begin(), models_.end(), doc.model_name) == models_.end()) {
      models_.push_back(doc.model_name);
    }
    index_.emplace(std::move(key), docs_.size());
    docs_.push_back(std::move(doc));
  }

  void merge(SummarySet other) {
    for (SummaryDoc& d : other.docs_) add(std::move(d));
    for (std::string& w : other.warnings_) warnings_.push_back(std::move(w));
  }

  const SummaryDoc* find(std::string_view model, std::string_view cluster_id) const {
    auto it = index_.find({std::string(model), std::string(cluster_id)});
    return it == index_.end() ? nullptr : &docs_[it->second];
  }

  const std::vector<SummaryDoc>& summaries() const noexcept { return docs_; }
  const std::vector<std::string>& models() const noexcept { return models_; }
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }
  void warn(std::string message) { warnings_.push_back(std::move(message)); }

 private:
  std::vector<SummaryDoc> docs_;
  std::vector<std::string> models_;
  std::vector<std::string> warnings_;
  std::map<std::pair<std::string, std::string>, std::size_t> index_;
};

/// Parses summary records {"kind":"summary","model","cluster_id","raw_text",
/// "sentences"?}. Records without sentences are split with split_sentences;
/// supplied sentences are kept verbatim. When `expected_model` is set every
/// record must carry that model name.
inline SummarySet parse_summaries(std::istream& in, const Corpus& corpus,
                                  const std::string& source = "<summaries>",
                                  const std::optional<std::string>& expected_model = {}) {
  SummarySet set;
  jsonl::for_each_record(in, source, [&](const jsonl::Json& rec, std::size_t line) {
    const std::string kind = jsonl::get_string(rec, "kind", source, line);
    if (kind != "summary") throw ParseError(source, line, "unknown record kind '" + kind + "'");

    SummaryDoc doc;
    doc.model_name = jsonl::get_string(rec, "model", source, line);
    doc.cluster_id = jsonl::get_string(rec, "cluster_id", source, line);
    if (doc.model_name.empty()) throw ParseError(source, line, "empty model name");
    if (expected_model && doc.model_name != *expected_model) {
      throw ParseError(source, line,
                       "record model '" + doc.model_name + "' does not match '" +
                           *expected_model + "'");
    }
    if (corpus.find_cluster(doc.cluster_id) == nullptr) {
      throw ParseError(source, line, "summary references unknown cluster '" + doc.cluster_id + "'");
    }
    try {
      doc.raw_text = text::normalize(jsonl::get_string(rec, "raw_text", source, line));
    } catch (const ParseError&) {
      throw;
    } catch (const ValidationError& e) {
      throw ParseError(source, line, e.what());
    }
    if (doc.raw_text.empty()) {
      throw ParseError(source, line,
                       "empty summary text for model '" + doc.model_name + "' and cluster '" +
                           doc.cluster_id + "'");
    }

    auto sents = rec.find("sentences");
    if (sents != rec.end() && !sents->is_null()) {
      if (!sents->is_array()) throw ParseError(source, line, "'sentences' must be an array");
      for (const auto& s : *sents) {
        if (!s.is_string()) throw ParseError(source, line, "sentence entries must be strings");
        std::string sentence = s.get<std::string>();
        if (text::trim(sentence).empty()) throw ParseError(source, line, "empty sentence");
        doc.sentences.push_back({doc.sentences.size(), std::move(sentence)});
      }
      if (doc.sentences.empty()) throw ParseError(source, line, "'sentences' is empty");
      doc.presplit = true;

      std::string joined;
      for (const Sentence& s : doc.sentences) joined += s.text + " ";
      if (text::collapse_whitespace(joined) != text::collapse_whitespace(doc.raw_text)) {
        set.warn(source + ":" + std::to_string(line) + ": sentences of model '" + doc.model_name +
                 "' cluster '" + doc.cluster_id + "' do not reproduce raw_text");
      }
    } else {
      doc.sentences = split_sentences(doc.raw_text);
    }

    try {
      set.add(std::move(doc));
    } catch (const ValidationError& e) {
      throw ParseError(source, line, e.what());
    }
  });
  return set;
}

inline SummarySet load_summaries(const std::string& path, const Corpus& corpus,
                                 const std::optional<std::string>& expected_model = {}) {
  std::ifstream in = jsonl::open_input(path);
  return parse_summaries(in, corpus, path, expected_model);
}

// ---------------------------------------------------------------------------
// Statistics

struct TopicStats {
  std::string topic_id;
  std::string display_name;
  std::size_t cluster_count = 0;
  std::size_t document_count = 0;
  // Absent for a topic without clusters.
  std::optional<double> avg_docs_per_cluster;
};

using CorpusStats = std::vector<TopicStats>;

inline CorpusStats corpus_stats(const Corpus& corpus) {
  CorpusStats stats;
  for (const Topic& t : corpus.topics()) {
    TopicStats s{t.topic_id, t.display_name, 0, 0, std::nullopt};
    for (const Cluster* c : corpus.clusters_of(t.topic_id)) {
      ++s.cluster_count;
      s.document_count += c->documents.size();
    }
    if (s.cluster_count > 0) {
      s.avg_docs_per_cluster =
          static_cast<double>(s.document_count) / static_cast<double>(s.cluster_count);
    }
    stats.push_back(std::move(s));
  }
  return stats;
}

}  // namespace opbias

#endif  // OPBIAS_CORPUS_HPP
