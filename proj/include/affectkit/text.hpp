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


#ifndef AFFECTKIT_TEXT_HPP_
#define AFFECTKIT_TEXT_HPP_

#include <optional>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

// Small string helpers shared by the parsers and serializers.
namespace affect::text {

std::string_view trim(std::string_view s) noexcept;
std::string to_lower(std::string_view s);

/// Lowercases, maps '_' to a space, collapses runs of whitespace and trims.
/// "Mildly_Annoyed " and "mildly  annoyed" both become "mildly annoyed".
std::string normalize_term(std::string_view s);

std::vector<std::string_view> split(std::string_view s, char delimiter);
std::vector<std::string_view> split_lines(std::string_view s);

/// Strict decimal parse: the whole (trimmed) token must be a finite number.
std::optional<double> parse_number(std::string_view token) noexcept;

/// Shortest decimal text that parses back to exactly `value`.
std::string format_number(double value);

/// Fixed-point text with `decimals` digits after the point.
std::string format_fixed(double value, int decimals);

bool is_word_char(char c) noexcept;

/// Whole file as bytes. Throws Error(io) when it cannot be read.
std::string read_file(const std::filesystem::path& path);
/// Replaces the file. Throws Error(io) on failure.
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace affect::text

#endif  // AFFECTKIT_TEXT_HPP_
