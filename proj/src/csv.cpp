// Copyright 2026 The affectkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "affectkit/csv.hpp"

#include "affectkit/error.hpp"

namespace affect::csv {

Document parse(std::string_view text) {
  Document doc;
  std::size_t i = 0;
  std::size_t line = 1;
  const std::size_t n = text.size();

  while (i < n) {
    // Skip blank lines and collect comments at record boundaries.
    if (text[i] == '\r' || text[i] == '\n') {
      if (text[i] == '\n') ++line;
      ++i;
      continue;
    }
    if (text[i] == '#') {
      const auto end = text.find('\n', i);
      auto body = text.substr(i + 1, (end == std::string_view::npos ? n : end) - i - 1);
      if (!body.empty() && body.back() == '\r') body.remove_suffix(1);
      doc.comments.emplace_back(line, std::string(body));
      i = end == std::string_view::npos ? n : end;
      continue;
    }

    Record record{line, {}};
    std::string field;
    bool in_quotes = false;
    bool field_was_quoted = false;
    const std::size_t start_line = line;
    while (i < n) {
      const char c = text[i];
      if (in_quotes) {
        if (c == '"') {
          if (i + 1 < n && text[i + 1] == '"') {
            field.push_back('"');
            i += 2;
            continue;
          }
          in_quotes = false;
          ++i;
          continue;
        }
        if (c == '\n') ++line;
        field.push_back(c);
        ++i;
        continue;
      }
      if (c == '"' && field.empty() && !field_was_quoted) {
        in_quotes = true;
        field_was_quoted = true;
        ++i;
        continue;
      }
      if (c == ',') {
        record.fields.push_back(std::move(field));
        field.clear();
        field_was_quoted = false;
        ++i;
        continue;
      }
      if (c == '\r' && i + 1 < n && text[i + 1] == '\n') {
        ++i;
        continue;
      }
      if (c == '\n') break;
      field.push_back(c);
      ++i;
    }
    if (in_quotes) throw ParseError("unterminated quoted field", start_line, record.fields.size() + 1);
    record.fields.push_back(std::move(field));
    doc.records.push_back(std::move(record));
  }
  return doc;
}

std::string quote(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos &&
      (field.empty() || field.front() != '#')) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string join_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out.push_back(',');
    out += quote(fields[i]);
  }
  return out;
}

}  // namespace affect::csv
