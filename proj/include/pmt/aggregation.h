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

#ifndef PMT_AGGREGATION_H_
#define PMT_AGGREGATION_H_

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pmt/groundtruth.h"
#include "pmt/prediction.h"

namespace pmt {

inline constexpr double kDefaultThreshold = 0.25;

// mutant_id -> detected.
struct SuiteVerdict {
  std::map<std::string, bool> detected;
  double threshold = 0.0;

  size_t DetectedCount() const;
  friend bool operator==(const SuiteVerdict&, const SuiteVerdict&) = default;
};

class AggregationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A mutant is detected iff its largest pair probability is strictly greater
// than `threshold`. Every mutant in `mutant_ids` must have an entry.
SuiteVerdict Aggregate(const PredictionMatrix& matrix, double threshold);
SuiteVerdict Aggregate(const PredictionMatrix& matrix, double threshold,
                       const std::vector<std::string>& mutant_ids);

// Scores max(p_mutated - p_original, 0) instead of p_mutated. Every entry
// must carry a baseline probability.
PredictionMatrix SubtractBaseline(const PredictionMatrix& matrix);

SuiteVerdict TruthVerdicts(const KillMatrix& truth);

// Probabilities 1.0 for detected pairs and 0.0 otherwise.
PredictionMatrix MatrixAsPredictions(const KillMatrix& truth);

}  // namespace pmt

#endif  // PMT_AGGREGATION_H_
