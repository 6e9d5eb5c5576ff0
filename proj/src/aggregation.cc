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

#include "pmt/aggregation.h"

#include <algorithm>

namespace pmt {

size_t SuiteVerdict::DetectedCount() const {
  return static_cast<size_t>(
      std::count_if(detected.begin(), detected.end(),
                    [](const auto& kv) { return kv.second; }));
}

SuiteVerdict Aggregate(const PredictionMatrix& matrix, double threshold) {
  return Aggregate(matrix, threshold, matrix.MutantIds());
}

SuiteVerdict Aggregate(const PredictionMatrix& matrix, double threshold,
                       const std::vector<std::string>& mutant_ids) {
  SuiteVerdict verdict;
  verdict.threshold = threshold;
  for (const auto& id : mutant_ids) {
    auto row = matrix.Row(id);
    if (row.empty()) {
      throw AggregationError("mutant " + id + " has no predictions");
    }
    double best = 0.0;
    for (const auto* e : row) best = std::max(best, e->probability);
    verdict.detected[id] = best > threshold;
  }
  return verdict;
}

PredictionMatrix SubtractBaseline(const PredictionMatrix& matrix) {
  std::vector<PredictionEntry> out;
  out.reserve(matrix.size());
  for (const auto& e : matrix.entries()) {
    if (!e.baseline_probability) {
      throw AggregationError("pair (" + e.mutant_id + ", " + e.test_id +
                             ") has no original-variant probability");
    }
    PredictionEntry d = e;
    d.probability = std::max(0.0, e.probability - *e.baseline_probability);
    out.push_back(std::move(d));
  }
  return PredictionMatrix(std::move(out));
}

SuiteVerdict TruthVerdicts(const KillMatrix& truth) {
  SuiteVerdict verdict;
  verdict.threshold = 0.0;
  for (const auto& id : truth.MutantIds()) {
    verdict.detected[id] = TruthSuiteVerdict(truth, id);
  }
  return verdict;
}

PredictionMatrix MatrixAsPredictions(const KillMatrix& truth) {
  std::vector<PredictionEntry> out;
  out.reserve(truth.size());
  for (const auto& e : truth.entries()) {
    out.push_back({e.mutant_id, e.test_id, e.detected ? 1.0 : 0.0, {}, 0.0});
  }
  return PredictionMatrix(std::move(out));
}

}  // namespace pmt
