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

#ifndef OPBIAS_RANKING_HPP
#define OPBIAS_RANKING_HPP

#include <cstddef>
#include <map>
#include <string>

namespace opbias {

/// Competition ranking ("1224"): a model's rank is one plus the number of
/// models with a strictly better score, so tied models share the smaller
/// rank and the following rank is skipped.
inline std::map<std::string, std::size_t> rank_models(const std::map<std::string, double>& scores,
                                                      bool higher_is_better = true) {
  std::map<std::string, std::size_t> ranks;
  for (const auto& [model, score] : scores) {
    std::size_t better = 0;
    for (const auto& [other, other_score] : scores) {
      if (higher_is_better ? other_score > score : other_score < score) ++better;
    }
    ranks.emplace(model, better + 1);
  }
  return ranks;
}

}  // namespace opbias

#endif  // OPBIAS_RANKING_HPP
