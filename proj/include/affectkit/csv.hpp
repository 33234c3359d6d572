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


#ifndef AFFECTKIT_CSV_HPP_
#define AFFECTKIT_CSV_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

// Minimal RFC 4180 reader/writer. Lines starting with '#' outside quoted
// fields are returned as comments rather than records.
namespace affect::csv {

struct Record {
  std::size_t line;  // 1-based line where the record starts
  std::vector<std::string> fields;
};

struct Document {
  std::vector<std::pair<std::size_t, std::string>> comments;  // (line, text after '#')
  std::vector<Record> records;
};

/// Throws ParseError on an unterminated quoted field.
Document parse(std::string_view text);

std::string quote(std::string_view field);
std::string join_row(const std::vector<std::string>& fields);

}  // namespace affect::csv

#endif  // AFFECTKIT_CSV_HPP_
