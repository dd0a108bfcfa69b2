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

#ifndef OPBIAS_NUMERIC_HPP
#define OPBIAS_NUMERIC_HPP

#include <algorithm>
#include <span>
#include <vector>

#include "opbias/error.hpp"

namespace opbias::numeric {

/// Pairwise (tree) summation in the given order. Error grows O(log n).
inline double pairwise_sum(std::span<const double> values) {
  constexpr std::size_t kLeaf = 8;
  if (values.size() <= kLeaf) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

/// Order-independent sum: values are sorted ascending, then summed pairwise.
/// Any permutation of the same multiset gives a bitwise-identical result.
inline double canonical_sum(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  return pairwise_sum(values);
}

/// Arithmetic mean under the canonical summation order. A constant input is
/// returned exactly.
inline double canonical_mean(std::vector<double> values) {
  if (values.empty()) throw DomainError("mean of an empty sequence");
  std::sort(values.begin(), values.end());
  if (values.front() == values.back()) return values.front();
  return pairwise_sum(values) / static_cast<double>(values.size());
}

}  // namespace opbias::numeric

#endif  // OPBIAS_NUMERIC_HPP
