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


#ifndef AFFECTKIT_CLI_HPP_
#define AFFECTKIT_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace affect::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;          // configuration, transport or usage error
inline constexpr int kExitParseFailures = 2;  // report written, some rows did not parse

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace affect::cli

#endif  // AFFECTKIT_CLI_HPP_
