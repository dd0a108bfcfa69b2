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

#ifndef OPBIAS_JSONL_HPP
#define OPBIAS_JSONL_HPP

#include <fstream>
#include <functional>
#include <istream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "opbias/error.hpp"
#include "opbias/text.hpp"

namespace opbias::jsonl {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

/// Calls `fn(record, line_number)` for every non-blank line of `in`.
/// Malformed JSON and non-object records raise ParseError.
inline void for_each_record(std::istream& in, const std::string& source,
                            const std::function<void(const Json&, std::size_t)>& fn) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    Json record;
    try {
      record = Json::parse(line);
    } catch (const Json::exception& e) {
      throw ParseError(source, line_no, std::string("malformed JSON: ") + e.what());
    }
    if (!record.is_object()) throw ParseError(source, line_no, "record is not a JSON object");
    fn(record, line_no);
  }
  if (in.bad()) throw IoError("read failure on " + source);
}

inline std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return in;
}

/// Required string field.
inline std::string get_string(const Json& record, std::string_view field,
                              const std::string& source, std::size_t line) {
  auto it = record.find(field);
  if (it == record.end()) {
    throw ParseError(source, line, "missing field '" + std::string(field) + "'");
  }
  if (!it->is_string()) {
    throw ParseError(source, line, "field '" + std::string(field) + "' must be a string");
  }
  return it->get<std::string>();
}

}  // namespace opbias::jsonl

#endif  // OPBIAS_JSONL_HPP
