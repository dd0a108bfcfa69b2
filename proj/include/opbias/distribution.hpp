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

#ifndef OPBIAS_DISTRIBUTION_HPP
#define OPBIAS_DISTRIBUTION_HPP

#include <array>
#include <cmath>
#include <span>

#include "opbias/error.hpp"
#include "opbias/stance.hpp"

namespace opbias {

/// Relative frequency of each stance label over a set of text units.
struct StanceDistribution {
  std::array<double, kStanceCount> proportions{};
  std::array<std::size_t, kStanceCount> counts{};
  std::size_t unit_count = 0;

  double operator[](StanceLabel s) const noexcept { return proportions[index_of(s)]; }
};

inline StanceDistribution stance_distribution(std::span<const StanceLabel> labels) {
  if (labels.empty()) throw DomainError("stance distribution of an empty label sequence");
  StanceDistribution d;
  for (StanceLabel s : labels) ++d.counts[index_of(s)];
  d.unit_count = labels.size();
  for (std::size_t i = 0; i < kStanceCount; ++i) {
    d.proportions[i] = static_cast<double>(d.counts[i]) / static_cast<double>(d.unit_count);
  }
  return d;
}

/// Total variation distance, ½ Σ |p_l − q_l|, in [0, 1].
inline double distribution_distance(const StanceDistribution& p, const StanceDistribution& q) {
  double sum = 0.0;
  for (std::size_t i = 0; i < kStanceCount; ++i) {
    sum += std::abs(p.proportions[i] - q.proportions[i]);
  }
  return 0.5 * sum;
}

}  // namespace opbias

#endif  // OPBIAS_DISTRIBUTION_HPP
