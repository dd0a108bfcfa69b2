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

#include <fstream>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "opbias/sentence_splitter.hpp"

namespace opbias {
namespace {

std::vector<std::string> texts(const std::vector<Sentence>& sentences) {
  std::vector<std::string> out;
  for (const Sentence& s : sentences) out.push_back(s.text);
  return out;
}

TEST(SentenceSplitter, TerminalPunctuation) {
  auto s = split_sentences("People are upset. It's important for public health.");
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].text, "People are upset.");
  EXPECT_EQ(s[1].text, "It's important for public health.");
  EXPECT_EQ(s[0].sent_index, 0u);
  EXPECT_EQ(s[1].sent_index, 1u);
}

TEST(SentenceSplitter, WholeTextFallback) {
  EXPECT_EQ(texts(split_sentences("No terminal punctuation")),
            std::vector<std::string>{"No terminal punctuation"});
}

TEST(SentenceSplitter, PunctuationRuns) {
  EXPECT_EQ(texts(split_sentences("Wow!! Really?? Yes.")),
            (std::vector<std::string>{"Wow!!", "Really??", "Yes."}));
}

TEST(SentenceSplitter, AbbreviationsSuppressSplits) {
  EXPECT_EQ(texts(split_sentences("Ask Dr. Fauci. Or an M.D. today")),
            (std::vector<std::string>{"Ask Dr. Fauci.", "Or an M.D. today"}));
  // Case-insensitive and tolerant of an opening bracket.
  EXPECT_EQ(split_sentences("(dr. Smith) agreed.").size(), 1u);
}

TEST(SentenceSplitter, WhitespaceOnlyYieldsNothing) {
  EXPECT_TRUE(split_sentences("   \n\t ").empty());
  EXPECT_TRUE(split_sentences("").empty());
}

TEST(SentenceSplitter, GoldenCases) {
  std::ifstream in(OPBIAS_SOURCE_DIR "/tests/golden/splitter_cases.jsonl");
  ASSERT_TRUE(in);
  std::string line;
  int cases = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto rec = nlohmann::json::parse(line);
    const auto expected = rec["sentences"].get<std::vector<std::string>>();
    EXPECT_EQ(texts(split_sentences(rec["text"].get<std::string>())), expected)
        << "input: " << rec["text"];
    ++cases;
  }
  EXPECT_GE(cases, 10);
}

std::string collapse(const std::string& s) { return text::collapse_whitespace(s); }

// Random texts built from a small vocabulary that hits every rule.
TEST(SentenceSplitter, PropertyDeterministicTotalAndCovering) {
  const std::vector<std::string> vocab = {
      "word", "Dr.",  "U.S.", "end.", "wow!!", "why?", "ok?!", "@user", "https://a.b/c.d",
      "\"quote.\"", "x",   "...", "e.g.",  "(aside)", "caf\xC3\xA9", "2.5"};
  const std::vector<std::string> spaces = {" ", "  ", "\n", "\t "};
  std::mt19937 rng(20240607);
  for (int trial = 0; trial < 2000; ++trial) {
    std::string input;
    const int n = 1 + static_cast<int>(rng() % 20);
    for (int i = 0; i < n; ++i) {
      if (i > 0 || rng() % 4 == 0) input += spaces[rng() % spaces.size()];
      input += vocab[rng() % vocab.size()];
    }
    if (rng() % 3 == 0) input += spaces[rng() % spaces.size()];

    const auto first = split_sentences(input);
    ASSERT_FALSE(first.empty()) << input;
    EXPECT_EQ(first, split_sentences(input));
    std::string joined;
    for (std::size_t i = 0; i < first.size(); ++i) {
      EXPECT_EQ(first[i].sent_index, i);
      EXPECT_FALSE(first[i].text.empty());
      EXPECT_EQ(first[i].text, std::string(text::trim(first[i].text)));
      joined += first[i].text + " ";
    }
    EXPECT_EQ(collapse(joined), collapse(input)) << input;
  }
}

}  // namespace
}  // namespace opbias
