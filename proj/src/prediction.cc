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

#include "pmt/prediction.h"

#include <algorithm>
#include <stdexcept>

namespace pmt {

PredictionMatrix::PredictionMatrix(std::vector<PredictionEntry> entries)
    : entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(),
            [](const PredictionEntry& a, const PredictionEntry& b) {
              return std::tie(a.mutant_id, a.test_id) <
                     std::tie(b.mutant_id, b.test_id);
            });
  for (size_t i = 0; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    if (!(e.probability >= 0.0 && e.probability <= 1.0)) {
      throw std::invalid_argument("probability outside [0, 1] for (" +
                                  e.mutant_id + ", " + e.test_id + ")");
    }
    if (i > 0 && e.mutant_id == entries_[i - 1].mutant_id &&
        e.test_id == entries_[i - 1].test_id) {
      throw std::invalid_argument("duplicate prediction for (" + e.mutant_id +
                                  ", " + e.test_id + ")");
    }
    auto [it, inserted] = rows_.try_emplace(e.mutant_id, i, i + 1);
    if (!inserted) it->second.second = i + 1;
  }
}

const PredictionEntry* PredictionMatrix::Find(std::string_view mutant_id,
                                              std::string_view test_id) const {
  for (const auto* e : Row(mutant_id)) {
    if (e->test_id == test_id) return e;
  }
  return nullptr;
}

std::vector<const PredictionEntry*> PredictionMatrix::Row(
    std::string_view mutant_id) const {
  std::vector<const PredictionEntry*> row;
  auto it = rows_.find(mutant_id);
  if (it == rows_.end()) return row;
  for (size_t i = it->second.first; i < it->second.second; ++i) {
    row.push_back(&entries_[i]);
  }
  return row;
}

std::vector<std::string> PredictionMatrix::MutantIds() const {
  std::vector<std::string> ids;
  for (const auto& [id, range] : rows_) ids.push_back(id);
  return ids;
}

nlohmann::json PredictionToJson(const PredictionEntry& e) {
  nlohmann::json j{{"mutant_id", e.mutant_id},
                   {"test_id", e.test_id},
                   {"probability", e.probability},
                   {"inference_flops", e.inference_flops}};
  if (e.baseline_probability) j["baseline_probability"] = *e.baseline_probability;
  return j;
}

PredictionEntry PredictionFromJson(const nlohmann::json& j) {
  PredictionEntry e;
  e.mutant_id = j.at("mutant_id").get<std::string>();
  e.test_id = j.at("test_id").get<std::string>();
  e.probability = j.at("probability").get<double>();
  e.inference_flops = j.value("inference_flops", 0.0);
  if (j.contains("baseline_probability")) {
    e.baseline_probability = j.at("baseline_probability").get<double>();
  }
  return e;
}

}  // namespace pmt
