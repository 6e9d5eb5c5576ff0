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

#include "pmt/vocabulary.h"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "pmt/hash.h"

namespace pmt {

namespace {

constexpr const char* kReserved[Vocabulary::kReservedCount] = {
    "<PAD>", "<UNK>", "<CLS>", "<SEP>", "<BEFORE>", "<AFTER>", "<ENDDIFF>"};

}  // namespace

Vocabulary::Vocabulary() {
  for (const char* tok : kReserved) Add(tok);
}

void Vocabulary::Add(std::string token) {
  ids_.emplace(token, static_cast<int>(tokens_.size()));
  tokens_.push_back(std::move(token));
}

Vocabulary Vocabulary::Build(
    const std::vector<std::vector<std::string>>& corpus, size_t max_size) {
  if (max_size <= kReservedCount) {
    throw std::invalid_argument("vocabulary max_size must exceed " +
                                std::to_string(kReservedCount));
  }
  Vocabulary vocab;
  std::map<std::string, size_t> counts;
  for (const auto& seq : corpus) {
    for (const auto& tok : seq) {
      if (!vocab.Contains(tok)) ++counts[tok];
    }
  }
  std::vector<std::pair<std::string, size_t>> ranked(counts.begin(),
                                                     counts.end());
  // `counts` is already lexicographic, so a stable sort by count keeps the
  // lexicographic tie break.
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  for (auto& [tok, count] : ranked) {
    if (vocab.size() >= max_size) break;
    vocab.Add(tok);
  }
  return vocab;
}

int Vocabulary::Id(std::string_view token) const {
  auto it = ids_.find(std::string(token));
  return it == ids_.end() ? kUnk : it->second;
}

std::vector<int> Vocabulary::Ids(const std::vector<std::string>& tokens) const {
  std::vector<int> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(Id(t));
  return out;
}

const std::string& Vocabulary::Token(int id) const {
  if (id < 0 || id >= static_cast<int>(tokens_.size())) {
    throw std::out_of_range("token id " + std::to_string(id) +
                            " outside vocabulary");
  }
  return tokens_[id];
}

bool Vocabulary::Contains(std::string_view token) const {
  return ids_.count(std::string(token)) > 0;
}

std::string Vocabulary::Hash() const {
  Fnv1a h;
  for (const auto& t : tokens_) h.Field(t);
  return h.hex();
}

nlohmann::json Vocabulary::ToJson() const {
  nlohmann::json j = nlohmann::json::object();
  for (size_t i = 0; i < tokens_.size(); ++i) j[tokens_[i]] = i;
  return j;
}

Vocabulary Vocabulary::FromJson(const nlohmann::json& j) {
  std::vector<std::string> by_id;
  for (const auto& [tok, id_json] : j.items()) {
    if (tok == kLineageKey) continue;
    size_t id = id_json.get<size_t>();
    if (id >= by_id.size()) by_id.resize(id + 1);
    if (!by_id[id].empty()) throw std::runtime_error("vocabulary ids collide");
    by_id[id] = tok;
  }
  for (int i = 0; i < kReservedCount; ++i) {
    if (i >= static_cast<int>(by_id.size()) || by_id[i] != kReserved[i]) {
      throw std::runtime_error("vocabulary is missing reserved token " +
                               std::string(kReserved[i]));
    }
  }
  Vocabulary vocab;
  for (size_t i = kReservedCount; i < by_id.size(); ++i) {
    if (by_id[i].empty()) throw std::runtime_error("vocabulary ids not dense");
    vocab.Add(by_id[i]);
  }
  return vocab;
}

}  // namespace pmt
