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

#ifndef OPBIAS_STANCE_HPP
#define OPBIAS_STANCE_HPP

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace opbias {

enum class StanceLabel : std::uint8_t { Support = 0, Against = 1, Neutral = 2 };

inline constexpr std::size_t kStanceCount = 3;

inline constexpr std::array<StanceLabel, kStanceCount> kAllStances = {
    StanceLabel::Support, StanceLabel::Against, StanceLabel::Neutral};

constexpr std::size_t index_of(StanceLabel s) noexcept {
  return static_cast<std::size_t>(s);
}

/// Canonical lower-case wire name.
constexpr std::string_view to_string(StanceLabel s) noexcept {
  switch (s) {
    case StanceLabel::Support:
      return "support";
    case StanceLabel::Against:
      return "against";
    case StanceLabel::Neutral:
      return "neutral";
  }
  return "neutral";
}

/// Case-insensitive parse of "support" / "against" / "neutral".
inline std::optional<StanceLabel> parse_stance(std::string_view text) {
  std::string lowered(text);
  std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (StanceLabel s : kAllStances) {
    if (lowered == to_string(s)) return s;
  }
  return std::nullopt;
}

}  // namespace opbias

#endif  // OPBIAS_STANCE_HPP
