// Copyright 2026 The PMT Authors
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

#ifndef PMT_HASH_H_
#define PMT_HASH_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace pmt {

// 64-bit FNV-1a. Stable across platforms and runs; used for content ids and
// artifact lineage, not for security.
class Fnv1a {
 public:
  Fnv1a& Update(std::string_view bytes);
  // Appends a field followed by a separator byte so adjacent fields cannot
  // alias ("ab","c" vs "a","bc").
  Fnv1a& Field(std::string_view bytes);
  Fnv1a& Field(int64_t value);
  uint64_t digest() const { return state_; }
  std::string hex() const;

 private:
  uint64_t state_ = 0xcbf29ce484222325ULL;
};

// Key under which JSON artifacts record the hashes of their inputs.
inline constexpr std::string_view kLineageKey = "@lineage";

std::string HashHex(std::string_view bytes);
std::string ToHex(uint64_t value);
std::string HashFile(const std::filesystem::path& path);
std::string ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path, std::string_view contents);

}  // namespace pmt

#endif  // PMT_HASH_H_
