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

#ifndef OPBIAS_LENGTH_CHECK_HPP
#define OPBIAS_LENGTH_CHECK_HPP

#include <cstddef>
#include <string>

#include "opbias/corpus.hpp"
#include "opbias/error.hpp"
#include "opbias/text.hpp"

namespace opbias {

/// Allowed summary length as a fraction of the gold length, inclusive.
struct LengthBand {
  double low = 0.90;
  double high = 1.10;
};

struct LengthCheck {
  bool pass = false;
  double ratio = 0.0;
  std::size_t tokens = 0;
};

inline LengthCheck length_check(std::string_view summary_text, std::size_t gold_tokens,
                                LengthBand band = {}) {
  if (gold_tokens == 0) throw DomainError("gold token count must be positive");
  LengthCheck r;
  r.tokens = text::count_tokens(summary_text);
  r.ratio = static_cast<double>(r.tokens) / static_cast<double>(gold_tokens);
  r.pass = r.ratio >= band.low && r.ratio <= band.high;
  return r;
}

inline LengthCheck length_check(const SummaryDoc& summary, std::size_t gold_tokens,
                                LengthBand band = {}) {
  return length_check(summary.raw_text, gold_tokens, band);
}

}  // namespace opbias

#endif  // OPBIAS_LENGTH_CHECK_HPP
