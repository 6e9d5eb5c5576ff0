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

#ifndef PMT_VOCABULARY_H_
#define PMT_VOCABULARY_H_

#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "json.hpp"

namespace pmt {

class Vocabulary {
 public:
  static constexpr int kPad = 0;
  static constexpr int kUnk = 1;
  static constexpr int kCls = 2;
  static constexpr int kSep = 3;
  static constexpr int kBefore = 4;
  static constexpr int kAfter = 5;
  static constexpr int kEndDiff = 6;
  static constexpr int kReservedCount = 7;

  // Only the reserved tokens.
  Vocabulary();

  // Reserved tokens followed by the most frequent corpus tokens, ties broken
  // lexicographically, until `max_size` entries. Requires max_size > 7.
  static Vocabulary Build(const std::vector<std::vector<std::string>>& corpus,
                          size_t max_size);

  int Id(std::string_view token) const;
  std::vector<int> Ids(const std::vector<std::string>& tokens) const;
  const std::string& Token(int id) const;
  bool Contains(std::string_view token) const;
  size_t size() const { return tokens_.size(); }

  // Content hash of the ordered token list.
  std::string Hash() const;

  nlohmann::json ToJson() const;
  static Vocabulary FromJson(const nlohmann::json& j);

 private:
  void Add(std::string token);

  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int> ids_;
};

}  // namespace pmt

#endif  // PMT_VOCABULARY_H_
