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

#ifndef PMT_PREDICTION_H_
#define PMT_PREDICTION_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

namespace pmt {

struct PredictionEntry {
  std::string mutant_id;
  std::string test_id;
  double probability = 0.0;  // P(detected)
  // No-diff only: P(detected) of the unmutated variant.
  std::optional<double> baseline_probability;
  double inference_flops = 0.0;

  friend bool operator==(const PredictionEntry&,
                         const PredictionEntry&) = default;
};

// Per-pair detection probabilities, ordered by (mutant_id, test_id).
class PredictionMatrix {
 public:
  PredictionMatrix() = default;
  explicit PredictionMatrix(std::vector<PredictionEntry> entries);

  const std::vector<PredictionEntry>& entries() const { return entries_; }
  size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  const PredictionEntry* Find(std::string_view mutant_id,
                              std::string_view test_id) const;
  std::vector<const PredictionEntry*> Row(std::string_view mutant_id) const;
  std::vector<std::string> MutantIds() const;

 private:
  std::vector<PredictionEntry> entries_;
  std::map<std::string, std::pair<size_t, size_t>, std::less<>> rows_;
};

nlohmann::json PredictionToJson(const PredictionEntry& entry);
PredictionEntry PredictionFromJson(const nlohmann::json& j);

}  // namespace pmt

#endif  // PMT_PREDICTION_H_
