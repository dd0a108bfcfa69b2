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

#ifndef OPBIAS_SENTENCE_SPLITTER_HPP
#define OPBIAS_SENTENCE_SPLITTER_HPP

#include <algorithm>
#include <array>
#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "opbias/text.hpp"

namespace opbias {

struct Sentence {
  std::size_t sent_index = 0;
  std::string text;

  friend bool operator==(const Sentence&, const Sentence&) = default;
};

// Rule-based splitter.
//
//  * A sentence ends after a run of '.', '!' or '?' (optionally followed by
//    closing quotes or brackets) when the run is followed by whitespace or
//    the end of the text. Breaks therefore only fall on whitespace.
//  * Tokens in kAbbreviations never end a sentence.
//  * URLs and @mentions are atomic: breaks only fall on whitespace, so
//    "cdc.gov/a.b?x=1" is never cut. A terminator run after one still ends
//    the sentence ("thanks @CDC. Next").
//  * Text with no terminator is one sentence.
//
// Sentence text is the verbatim span of the input from the first to the last
// character of the sentence; inter-sentence whitespace is dropped.
namespace splitter_detail {

inline constexpr std::array<std::string_view, 24> kAbbreviations = {
    "mr.",  "mrs.", "ms.",   "dr.",   "prof.", "sr.",  "jr.",  "st.",
    "gen.", "gov.", "sen.",  "rep.",  "lt.",   "col.", "vs.",  "e.g.",
    "i.e.", "u.s.", "u.k.",  "u.n.",  "m.d.",  "ph.d.", "d.c.", "a.k.a."};

constexpr bool is_terminator(char c) noexcept { return c == '.' || c == '!' || c == '?'; }

constexpr bool is_ascii_closer(char c) noexcept {
  return c == '"' || c == '\'' || c == ')' || c == ']' || c == '}';
}

constexpr bool is_ascii_opener(char c) noexcept {
  return c == '"' || c == '\'' || c == '(' || c == '[' || c == '{';
}

// U+2019 RIGHT SINGLE QUOTATION MARK, U+201D RIGHT DOUBLE QUOTATION MARK.
inline constexpr std::array<std::string_view, 2> kUtf8Closers = {"\xE2\x80\x99",
                                                                   "\xE2\x80\x9D"};
// U+2018, U+201C.
inline constexpr std::array<std::string_view, 2> kUtf8Openers = {"\xE2\x80\x98",
                                                                   "\xE2\x80\x9C"};

inline std::string_view strip_closers(std::string_view tok) {
  for (bool changed = true; changed && !tok.empty();) {
    changed = false;
    if (is_ascii_closer(tok.back())) {
      tok.remove_suffix(1);
      changed = true;
      continue;
    }
    for (std::string_view c : kUtf8Closers) {
      if (tok.ends_with(c)) {
        tok.remove_suffix(c.size());
        changed = true;
        break;
      }
    }
  }
  return tok;
}

inline std::string_view strip_openers(std::string_view tok) {
  for (bool changed = true; changed && !tok.empty();) {
    changed = false;
    if (is_ascii_opener(tok.front())) {
      tok.remove_prefix(1);
      changed = true;
      continue;
    }
    for (std::string_view c : kUtf8Openers) {
      if (tok.starts_with(c)) {
        tok.remove_prefix(c.size());
        changed = true;
        break;
      }
    }
  }
  return tok;
}

inline bool is_abbreviation(std::string_view core) {
  std::string lowered(strip_openers(core));
  std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return std::find(kAbbreviations.begin(), kAbbreviations.end(), lowered) !=
         kAbbreviations.end();
}

// Whether `token` (a maximal non-whitespace run) closes a sentence.
inline bool ends_sentence(std::string_view token) {
  std::string_view core = strip_closers(token);
  if (core.empty() || !is_terminator(core.back())) return false;
  std::string_view body = core;
  while (!body.empty() && is_terminator(body.back())) body.remove_suffix(1);
  bool only_periods = core.substr(body.size()).find_first_of("!?") == std::string_view::npos;
  if (only_periods && core.size() - body.size() == 1 && is_abbreviation(core)) return false;
  return true;
}

}  // namespace splitter_detail

/// Splits `text` into sentences. Returns an empty list for whitespace-only
/// input; callers reject that case.
inline std::vector<Sentence> split_sentences(std::string_view text) {
  using splitter_detail::ends_sentence;
  std::vector<Sentence> out;
  std::size_t i = 0;
  std::size_t sentence_start = std::string_view::npos;
  while (i < text.size()) {
    while (i < text.size() && text::is_space(text[i])) ++i;
    if (i == text.size()) break;
    std::size_t tok_start = i;
    while (i < text.size() && !text::is_space(text[i])) ++i;
    if (sentence_start == std::string_view::npos) sentence_start = tok_start;
    if (ends_sentence(text.substr(tok_start, i - tok_start))) {
      out.push_back({out.size(), std::string(text.substr(sentence_start, i - sentence_start))});
      sentence_start = std::string_view::npos;
    }
  }
  if (sentence_start != std::string_view::npos) {
    out.push_back({out.size(), std::string(text::trim(text.substr(sentence_start)))});
  }
  return out;
}

}  // namespace opbias

#endif  // OPBIAS_SENTENCE_SPLITTER_HPP
