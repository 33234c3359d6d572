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


#ifndef AFFECTKIT_ERROR_HPP_
#define AFFECTKIT_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace affect {

enum class ErrorKind {
  invalid_argument,
  scale_mismatch,
  out_of_range,
  not_found,
  duplicate,
  parse,
  validation,
  configuration,
  connection,
  transport,
  timeout,
  digest_mismatch,
  fixture_exhausted,
  protocol,
  io,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Every failure raised by the library carries a kind so that callers (and
// experiment reports) can tell transport problems from parse problems.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Parse failure with a 1-based location inside the parsed text. A zero
/// row or column means the location is unknown or not applicable.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t row, std::size_t column)
      : Error(ErrorKind::parse, message), row_(row), column_(column) {}

  std::size_t row() const noexcept { return row_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t row_;
  std::size_t column_;
};

}  // namespace affect

#endif  // AFFECTKIT_ERROR_HPP_
