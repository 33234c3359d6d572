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


#ifndef AFFECTKIT_ASSETS_HPP_
#define AFFECTKIT_ASSETS_HPP_

#include <cstddef>
#include <string_view>
#include <vector>

// Read-only access to the data files compiled into the library (fixtures and
// prompt templates). Names are paths relative to the data/ directory.
namespace affect::assets {

std::string_view get(std::string_view name);
bool contains(std::string_view name) noexcept;
std::vector<std::string_view> names();

namespace detail {
struct AssetRecord {
  const char* name;
  const unsigned char* data;
  std::size_t size;
};
extern const AssetRecord kAssets[];
extern const std::size_t kAssetCount;
}  // namespace detail

}  // namespace affect::assets

#endif  // AFFECTKIT_ASSETS_HPP_
