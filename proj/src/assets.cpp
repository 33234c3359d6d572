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


#include "affectkit/assets.hpp"

#include <string>

#include "affectkit/error.hpp"

namespace affect {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid_argument";
    case ErrorKind::scale_mismatch: return "scale_mismatch";
    case ErrorKind::out_of_range: return "out_of_range";
    case ErrorKind::not_found: return "not_found";
    case ErrorKind::duplicate: return "duplicate";
    case ErrorKind::parse: return "parse";
    case ErrorKind::validation: return "validation";
    case ErrorKind::configuration: return "configuration";
    case ErrorKind::connection: return "connection";
    case ErrorKind::transport: return "transport";
    case ErrorKind::timeout: return "timeout";
    case ErrorKind::digest_mismatch: return "digest_mismatch";
    case ErrorKind::fixture_exhausted: return "fixture_exhausted";
    case ErrorKind::protocol: return "protocol";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

namespace assets {

namespace {
const detail::AssetRecord* find(std::string_view name) noexcept {
  for (std::size_t i = 0; i < detail::kAssetCount; ++i) {
    if (name == detail::kAssets[i].name) return &detail::kAssets[i];
  }
  return nullptr;
}
}  // namespace

std::string_view get(std::string_view name) {
  const auto* record = find(name);
  if (record == nullptr) {
    throw Error(ErrorKind::not_found, "no embedded asset named '" + std::string(name) + "'");
  }
  return {reinterpret_cast<const char*>(record->data), record->size};
}

bool contains(std::string_view name) noexcept { return find(name) != nullptr; }

std::vector<std::string_view> names() {
  std::vector<std::string_view> out;
  out.reserve(detail::kAssetCount);
  for (std::size_t i = 0; i < detail::kAssetCount; ++i) out.emplace_back(detail::kAssets[i].name);
  return out;
}

}  // namespace assets
}  // namespace affect
