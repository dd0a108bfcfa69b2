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

#ifndef OPBIAS_SIMILARITY_HPP
#define OPBIAS_SIMILARITY_HPP

#include <cmath>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "opbias/annotations.hpp"
#include "opbias/error.hpp"
#include "opbias/numeric.hpp"

namespace opbias {

enum class RepresentationOrigin { SourceCluster, Summary };

/// How sentence embeddings are pooled into a summary representation.
///  SentenceMean:   unweighted mean over sentences (default).
///  LengthWeighted: sentences weighted by whitespace token count, which
///                  approximates a single mean over every token of the summary.
enum class PoolingVariant { SentenceMean, LengthWeighted };

struct Representation {
  std::vector<double> vector;
  RepresentationOrigin origin = RepresentationOrigin::SourceCluster;

  std::size_t dim() const noexcept { return vector.size(); }
};

namespace detail {

inline std::size_t common_dim(std::span<const std::vector<double>> vectors) {
  if (vectors.empty()) throw DomainError("cannot pool an empty sequence of vectors");
  const std::size_t dim = vectors.front().size();
  if (dim == 0) throw DomainError("cannot pool zero-dimensional vectors");
  for (const auto& v : vectors) {
    if (v.size() != dim) {
      throw DomainError("ragged vectors: dimension " + std::to_string(v.size()) + " vs " +
                        std::to_string(dim));
    }
  }
  return dim;
}

}  // namespace detail

/// Component-wise arithmetic mean. Each component is summed in canonical
/// (sorted, pairwise) order, so the result does not depend on input order.
inline std::vector<double> mean_pool(std::span<const std::vector<double>> vectors) {
  const std::size_t dim = detail::common_dim(vectors);
  std::vector<double> out(dim);
  std::vector<double> column(vectors.size());
  for (std::size_t k = 0; k < dim; ++k) {
    for (std::size_t i = 0; i < vectors.size(); ++i) column[i] = vectors[i][k];
    out[k] = numeric::canonical_mean(column);
  }
  return out;
}

/// Σ w_i v_i / Σ w_i with strictly positive weights.
inline std::vector<double> weighted_mean_pool(std::span<const std::vector<double>> vectors,
                                              std::span<const double> weights) {
  const std::size_t dim = detail::common_dim(vectors);
  if (weights.size() != vectors.size()) throw DomainError("one weight per vector required");
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) throw DomainError("weights must be positive and finite");
  }
  const double total = numeric::canonical_sum({weights.begin(), weights.end()});
  std::vector<double> out(dim);
  std::vector<double> column(vectors.size());
  for (std::size_t k = 0; k < dim; ++k) {
    bool constant = true;
    for (std::size_t i = 0; i < vectors.size(); ++i) {
      column[i] = weights[i] * vectors[i][k];
      constant = constant && vectors[i][k] == vectors[0][k];
    }
    out[k] = constant ? vectors[0][k] : numeric::canonical_sum(column) / total;
  }
  return out;
}

namespace detail {

inline std::vector<std::vector<double>> embeddings_of(std::span<const AnnotatedText> units,
                                                      std::string_view owner) {
  std::vector<std::vector<double>> out;
  out.reserve(units.size());
  for (const AnnotatedText& u : units) {
    if (u.embedding.empty()) {
      throw DomainError("missing embedding for unit '" + u.unit_id + "' in " + std::string(owner));
    }
    out.push_back(u.embedding);
  }
  return out;
}

}  // namespace detail

/// Mean of the per-document embeddings of a cluster.
inline Representation source_representation(const AnnotatedCluster& cluster) {
  auto vectors = detail::embeddings_of(cluster.documents, "cluster '" + cluster.cluster_id + "'");
  return {mean_pool(vectors), RepresentationOrigin::SourceCluster};
}

/// Mean of the per-sentence embeddings of a summary.
inline Representation summary_representation(const AnnotatedSummary& summary,
                                             PoolingVariant pooling = PoolingVariant::SentenceMean) {
  auto vectors = detail::embeddings_of(
      summary.sentences, "summary '" + summary.cluster_id + "/" + summary.model + "'");
  if (pooling == PoolingVariant::SentenceMean) {
    return {mean_pool(vectors), RepresentationOrigin::Summary};
  }
  std::vector<double> weights;
  weights.reserve(summary.sentences.size());
  for (const AnnotatedText& s : summary.sentences) {
    weights.push_back(static_cast<double>(std::max<std::size_t>(s.token_count, 1)));
  }
  return {weighted_mean_pool(vectors, weights), RepresentationOrigin::Summary};
}

/// dot(a, b) / (|a| |b|). Each vector is first scaled by its largest
/// magnitude so the norms cannot overflow or underflow. A zero vector raises
/// ZeroNormError.
inline double cosine_similarity(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw DomainError("cosine of vectors with dimensions " + std::to_string(a.size()) + " and " +
                      std::to_string(b.size()));
  }
  if (a.empty()) throw DomainError("cosine of empty vectors");
  auto scaled = [](std::span<const double> v) {
    double peak = 0.0;
    for (double x : v) {
      if (!std::isfinite(x)) throw DomainError("non-finite vector component");
      peak = std::max(peak, std::abs(x));
    }
    if (peak == 0.0) throw ZeroNormError("zero-norm vector in cosine similarity");
    std::vector<double> out(v.begin(), v.end());
    for (double& x : out) x /= peak;
    return out;
  };
  const std::vector<double> x = scaled(a);
  const std::vector<double> y = scaled(b);
  std::vector<double> xy(x.size()), xx(x.size()), yy(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    xy[i] = x[i] * y[i];
    xx[i] = x[i] * x[i];
    yy[i] = y[i] * y[i];
  }
  const double dot = numeric::pairwise_sum(xy);
  const double nx = numeric::pairwise_sum(xx);
  const double ny = numeric::pairwise_sum(yy);
  return dot / std::sqrt(nx * ny);
}

inline double cosine_similarity(const Representation& a, const Representation& b) {
  return cosine_similarity(a.vector, b.vector);
}

struct ClusterSimilarity {
  std::string cluster_id;
  double cosine = 0.0;
};

/// Cosine between source and summary representation for every cluster of a
/// topic, in corpus order. Throws ValidationError when the model has no
/// summary for one of the clusters.
inline std::vector<ClusterSimilarity> cluster_similarities(
    const AnnotatedCorpus& corpus, std::string_view topic_id, std::string_view model,
    PoolingVariant pooling = PoolingVariant::SentenceMean) {
  std::vector<ClusterSimilarity> out;
  for (const AnnotatedCluster* c : corpus.clusters_of(topic_id)) {
    const AnnotatedSummary* s = corpus.find_summary(model, c->cluster_id);
    if (s == nullptr) {
      throw ValidationError("model '" + std::string(model) + "' has no summary for cluster '" +
                            c->cluster_id + "'");
    }
    out.push_back({c->cluster_id, cosine_similarity(source_representation(*c),
                                                     summary_representation(*s, pooling))});
  }
  return out;
}

/// Mean over the topic's clusters of the source/summary cosine.
inline double similarity_for_model(const AnnotatedCorpus& corpus, std::string_view topic_id,
                                   std::string_view model,
                                   PoolingVariant pooling = PoolingVariant::SentenceMean) {
  std::vector<double> values;
  for (const ClusterSimilarity& cs : cluster_similarities(corpus, topic_id, model, pooling)) {
    values.push_back(cs.cosine);
  }
  if (values.empty()) throw DomainError("topic '" + std::string(topic_id) + "' has no clusters");
  return numeric::canonical_mean(std::move(values));
}

}  // namespace opbias

#endif  // OPBIAS_SIMILARITY_HPP
