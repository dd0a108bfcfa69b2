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

#ifndef OPBIAS_ANNOTATIONS_HPP
#define OPBIAS_ANNOTATIONS_HPP

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "opbias/corpus.hpp"
#include "opbias/error.hpp"
#include "opbias/jsonl.hpp"
#include "opbias/stance.hpp"

namespace opbias {

/// Stance and pooled embedding for one text unit: a source doc (unit id =
/// doc_id) or a summary sentence (unit id = "cluster_id/model/sent_index").
struct AnnotatedUnit {
  std::string unit_id;
  std::string target;
  StanceLabel stance = StanceLabel::Neutral;
  std::vector<double> embedding;
  std::optional<std::string> provenance;

  friend bool operator==(const AnnotatedUnit&, const AnnotatedUnit&) = default;
};

inline std::string sentence_unit_id(std::string_view cluster_id, std::string_view model,
                                    std::size_t sent_index) {
  std::string id;
  id.reserve(cluster_id.size() + model.size() + 8);
  id.append(cluster_id).append("/").append(model).append("/").append(std::to_string(sent_index));
  return id;
}

class AnnotationSet {
 public:
  /// Throws ValidationError on duplicate ids, non-finite components, or a
  /// dimension different from the first unit added.
  void add(AnnotatedUnit unit) {
    if (unit.unit_id.empty()) throw ValidationError("annotation with empty unit_id");
    if (unit.embedding.empty()) {
      throw ValidationError("unit '" + unit.unit_id + "' has an empty embedding");
    }
    for (double v : unit.embedding) {
      if (!std::isfinite(v)) {
        throw ValidationError("unit '" + unit.unit_id + "' has a non-finite embedding component");
      }
    }
    if (units_.empty()) {
      dim_ = unit.embedding.size();
    } else if (unit.embedding.size() != dim_) {
      throw ValidationError("unit '" + unit.unit_id + "' has embedding dimension " +
                            std::to_string(unit.embedding.size()) + ", expected " +
                            std::to_string(dim_));
    }
    if (index_.contains(unit.unit_id)) {
      throw ValidationError("duplicate annotation for unit '" + unit.unit_id + "'");
    }
    if (unit.provenance && std::find(provenances_.begin(), provenances_.end(),
                                     *unit.provenance) == provenances_.end()) {
      provenances_.push_back(*unit.provenance);
    }
    index_.emplace(unit.unit_id, units_.size());
    units_.push_back(std::move(unit));
  }

  const AnnotatedUnit* find(std::string_view unit_id) const {
    auto it = index_.find(std::string(unit_id));
    return it == index_.end() ? nullptr : &units_[it->second];
  }

  const std::vector<AnnotatedUnit>& units() const noexcept { return units_; }
  std::size_t embedding_dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return units_.size(); }

  /// Distinct provenance strings in order of first appearance, joined by "; ".
  std::string provenance() const {
    std::string out;
    for (const std::string& p : provenances_) {
      if (!out.empty()) out += "; ";
      out += p;
    }
    return out;
  }

 private:
  std::vector<AnnotatedUnit> units_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::string> provenances_;
  std::size_t dim_ = 0;
};

/// Parses {"unit_id","target","stance","embedding":[...],"provenance"?} records.
inline AnnotationSet parse_annotations(std::istream& in,
                                       const std::string& source = "<annotations>") {
  AnnotationSet set;
  jsonl::for_each_record(in, source, [&](const jsonl::Json& rec, std::size_t line) {
    AnnotatedUnit unit;
    unit.unit_id = jsonl::get_string(rec, "unit_id", source, line);
    unit.target = jsonl::get_string(rec, "target", source, line);
    const std::string stance = jsonl::get_string(rec, "stance", source, line);
    auto label = parse_stance(stance);
    if (!label) throw ParseError(source, line, "unknown stance label '" + stance + "'");
    unit.stance = *label;

    auto emb = rec.find("embedding");
    if (emb == rec.end() || !emb->is_array()) {
      throw ParseError(source, line, "field 'embedding' must be an array of numbers");
    }
    unit.embedding.reserve(emb->size());
    for (const auto& v : *emb) {
      if (!v.is_number()) throw ParseError(source, line, "embedding entries must be numbers");
      unit.embedding.push_back(v.get<double>());
    }
    if (auto p = rec.find("provenance"); p != rec.end() && !p->is_null()) {
      if (!p->is_string()) throw ParseError(source, line, "'provenance' must be a string");
      unit.provenance = p->get<std::string>();
    }
    try {
      set.add(std::move(unit));
    } catch (const ValidationError& e) {
      throw ParseError(source, line, e.what());
    }
  });
  return set;
}

inline AnnotationSet load_annotations(const std::string& path) {
  std::ifstream in = jsonl::open_input(path);
  return parse_annotations(in, path);
}

/// Canonical serialisation: fixed field order, lower-case stance.
inline std::string to_jsonl(const AnnotationSet& set) {
  std::ostringstream out;
  for (const AnnotatedUnit& u : set.units()) {
    jsonl::OrderedJson rec;
    rec["unit_id"] = u.unit_id;
    rec["target"] = u.target;
    rec["stance"] = std::string(to_string(u.stance));
    rec["embedding"] = u.embedding;
    if (u.provenance) rec["provenance"] = *u.provenance;
    out << rec.dump() << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Join

struct AnnotatedText {
  std::string unit_id;
  StanceLabel stance = StanceLabel::Neutral;
  std::vector<double> embedding;
  std::size_t token_count = 0;
};

struct AnnotatedCluster {
  std::string cluster_id;
  std::string topic_id;
  std::vector<AnnotatedText> documents;
};

struct AnnotatedSummary {
  std::string model;
  std::string cluster_id;
  std::string raw_text;
  std::vector<AnnotatedText> sentences;
};

/// Corpus, summaries and annotations joined per unit. Self-contained: holds
/// copies, not references into its inputs.
struct AnnotatedCorpus {
  std::vector<Topic> topics;
  std::vector<AnnotatedCluster> clusters;
  std::vector<std::string> models;
  std::map<std::pair<std::string, std::string>, AnnotatedSummary> summaries;
  std::size_t embedding_dim = 0;
  std::string provenance;
  std::vector<std::string> warnings;

  std::vector<const AnnotatedCluster*> clusters_of(std::string_view topic_id) const {
    std::vector<const AnnotatedCluster*> out;
    for (const AnnotatedCluster& c : clusters) {
      if (c.topic_id == topic_id) out.push_back(&c);
    }
    return out;
  }

  const AnnotatedSummary* find_summary(std::string_view model, std::string_view cluster_id) const {
    auto it = summaries.find({std::string(model), std::string(cluster_id)});
    return it == summaries.end() ? nullptr : &it->second;
  }
};

/// Raised by join_annotations; carries every unit id lacking an annotation.
class MissingAnnotationError : public ValidationError {
 public:
  explicit MissingAnnotationError(std::vector<std::string> ids)
      : ValidationError(describe(ids)), missing_(std::move(ids)) {}

  const std::vector<std::string>& missing() const noexcept { return missing_; }

 private:
  static std::string describe(const std::vector<std::string>& ids) {
    std::string msg = std::to_string(ids.size()) + " unit(s) lack an annotation:";
    for (const std::string& id : ids) msg += " " + id;
    return msg;
  }

  std::vector<std::string> missing_;
};

inline AnnotatedCorpus join_annotations(const Corpus& corpus, const SummarySet& summaries,
                                        const AnnotationSet& ann) {
  AnnotatedCorpus out;
  out.topics = corpus.topics();
  out.models = summaries.models();
  out.embedding_dim = ann.embedding_dim();
  out.provenance = ann.provenance();
  out.warnings = summaries.warnings();

  std::vector<std::string> missing;
  std::unordered_set<std::string> used;

  auto annotate = [&](const std::string& unit_id, std::string_view body,
                      const std::string& expected_target) -> std::optional<AnnotatedText> {
    const AnnotatedUnit* u = ann.find(unit_id);
    if (u == nullptr) {
      missing.push_back(unit_id);
      return std::nullopt;
    }
    if (u->target != expected_target) {
      throw ValidationError("unit '" + unit_id + "' annotated for target '" + u->target +
                            "', topic expects '" + expected_target + "'");
    }
    used.insert(unit_id);
    return AnnotatedText{unit_id, u->stance, u->embedding, text::count_tokens(body)};
  };

  for (const Cluster& c : corpus.clusters()) {
    const std::string& target = corpus.find_topic(c.topic_id)->stance_target;
    AnnotatedCluster ac{c.cluster_id, c.topic_id, {}};
    for (const SourceDoc& d : c.documents) {
      if (auto t = annotate(d.doc_id, d.text, target)) ac.documents.push_back(std::move(*t));
    }
    out.clusters.push_back(std::move(ac));
  }

  for (const SummaryDoc& s : summaries.summaries()) {
    const Cluster* c = corpus.find_cluster(s.cluster_id);
    if (c == nullptr) throw ValidationError("summary references unknown cluster '" + s.cluster_id + "'");
    const std::string& target = corpus.find_topic(c->topic_id)->stance_target;
    AnnotatedSummary as{s.model_name, s.cluster_id, s.raw_text, {}};
    for (const Sentence& sent : s.sentences) {
      std::string id = sentence_unit_id(s.cluster_id, s.model_name, sent.sent_index);
      if (auto t = annotate(id, sent.text, target)) as.sentences.push_back(std::move(*t));
    }
    out.summaries.emplace(std::make_pair(s.model_name, s.cluster_id), std::move(as));
  }

  if (!missing.empty()) throw MissingAnnotationError(std::move(missing));

  std::string orphans;
  std::size_t orphan_count = 0;
  for (const AnnotatedUnit& u : ann.units()) {
    if (used.contains(u.unit_id)) continue;
    ++orphan_count;
    orphans += " " + u.unit_id;
  }
  if (orphan_count > 0) {
    out.warnings.push_back(std::to_string(orphan_count) +
                           " annotation(s) match no corpus unit:" + orphans);
  }
  return out;
}

}  // namespace opbias

#endif  // OPBIAS_ANNOTATIONS_HPP
