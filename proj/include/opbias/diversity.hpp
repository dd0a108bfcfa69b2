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

#ifndef OPBIAS_DIVERSITY_HPP
#define OPBIAS_DIVERSITY_HPP

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "opbias/error.hpp"
#include "opbias/numeric.hpp"
#include "opbias/stance.hpp"

namespace opbias {

enum class OpinionSource : std::uint8_t { FromSources, FromSummary };

/// Deduplicated set of stance labels (a subset of {support, against, neutral}).
class OpinionSet {
 public:
  constexpr OpinionSet() = default;
  constexpr explicit OpinionSet(OpinionSource kind) : kind_(kind) {}
  constexpr OpinionSet(std::initializer_list<StanceLabel> labels,
                       OpinionSource kind = OpinionSource::FromSummary)
      : kind_(kind) {
    for (StanceLabel s : labels) insert(s);
  }

  constexpr void insert(StanceLabel s) noexcept { bits_ |= bit(s); }
  constexpr bool contains(StanceLabel s) const noexcept { return (bits_ & bit(s)) != 0; }
  constexpr std::size_t size() const noexcept { return std::popcount(bits_); }
  constexpr bool empty() const noexcept { return bits_ == 0; }
  constexpr OpinionSource source() const noexcept { return kind_; }
  constexpr std::uint8_t mask() const noexcept { return bits_; }

  constexpr OpinionSet intersect(OpinionSet o) const noexcept { return with_bits(bits_ & o.bits_); }
  constexpr OpinionSet minus(OpinionSet o) const noexcept { return with_bits(bits_ & ~o.bits_); }

  /// Labels in canonical order (support, against, neutral).
  std::vector<StanceLabel> labels() const {
    std::vector<StanceLabel> out;
    for (StanceLabel s : kAllStances) {
      if (contains(s)) out.push_back(s);
    }
    return out;
  }

  /// Equality ignores the source kind.
  friend constexpr bool operator==(OpinionSet a, OpinionSet b) noexcept {
    return a.bits_ == b.bits_;
  }

 private:
  static constexpr std::uint8_t bit(StanceLabel s) noexcept {
    return static_cast<std::uint8_t>(1u << index_of(s));
  }
  constexpr OpinionSet with_bits(std::uint8_t bits) const noexcept {
    OpinionSet r(kind_);
    r.bits_ = bits;
    return r;
  }

  std::uint8_t bits_ = 0;
  OpinionSource kind_ = OpinionSource::FromSummary;
};

inline OpinionSet opinion_set(std::span<const StanceLabel> labels,
                              OpinionSource kind = OpinionSource::FromSummary) {
  OpinionSet set(kind);
  for (StanceLabel s : labels) set.insert(s);
  return set;
}

struct DiversityScore {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

/// Opinion precision / recall / F1 of a summary's stance set against the
/// stance set of its source cluster.
///
///   tp = |source ∩ summary|, fp = |summary \ source|, fn = |source \ summary|
///
/// Ratios with a zero denominator are 0, so an empty summary set scores 0/0/0.
/// F1 is computed as 2tp / (2tp + fp + fn), which equals 2PR / (P + R)
/// whenever P + R > 0 and needs a single rounding.
inline DiversityScore diversity_score(OpinionSet source, OpinionSet summary) {
  if (source.empty()) throw DomainError("source opinion set is empty");
  DiversityScore r;
  r.tp = source.intersect(summary).size();
  r.fp = summary.minus(source).size();
  r.fn = source.minus(summary).size();
  auto ratio = [](std::size_t num, std::size_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
  };
  r.precision = ratio(r.tp, r.tp + r.fp);
  r.recall = ratio(r.tp, r.tp + r.fn);
  r.f1 = ratio(2 * r.tp, 2 * r.tp + r.fp + r.fn);
  return r;
}

/// Unweighted means over clusters. `pooled_f1` is the harmonic mean of the
/// mean precision and mean recall, the alternative topic-level reading.
struct MacroScores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double pooled_f1 = 0.0;
  std::size_t cluster_count = 0;
};

inline MacroScores aggregate_macro(std::span<const DiversityScore> scores) {
  if (scores.empty()) throw DomainError("cannot average an empty sequence of scores");
  std::vector<double> p, r, f;
  p.reserve(scores.size());
  r.reserve(scores.size());
  f.reserve(scores.size());
  for (const DiversityScore& s : scores) {
    p.push_back(s.precision);
    r.push_back(s.recall);
    f.push_back(s.f1);
  }
  MacroScores m;
  m.cluster_count = scores.size();
  m.precision = numeric::canonical_mean(std::move(p));
  m.recall = numeric::canonical_mean(std::move(r));
  m.f1 = numeric::canonical_mean(std::move(f));
  m.pooled_f1 = m.precision + m.recall > 0.0
                    ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
                    : 0.0;
  return m;
}

inline double macro_f1(std::span<const DiversityScore> scores) {
  return aggregate_macro(scores).f1;
}

}  // namespace opbias

#endif  // OPBIAS_DIVERSITY_HPP
