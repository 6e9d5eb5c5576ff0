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

#ifndef PMT_METRICS_H_
#define PMT_METRICS_H_

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "pmt/aggregation.h"
#include "pmt/groundtruth.h"
#include "pmt/prediction.h"

namespace pmt {

inline constexpr double kPairCutoff = 0.5;
inline constexpr std::array<double, 5> kSweepThresholds = {0.10, 0.25, 0.50,
                                                           0.75, 0.90};

struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  friend bool operator==(const Prf&, const Prf&) = default;
};

struct Confusion {
  size_t tp = 0;
  size_t fp = 0;
  size_t fn = 0;
  size_t tn = 0;

  void Add(bool predicted_positive, bool actually_positive);
  // Precision (recall) is 0 when nothing is predicted (actually) positive.
  Prf Scores() const;

  friend bool operator==(const Confusion&, const Confusion&) = default;
};

class MetricsError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Pair level, detected is positive, predicted detected iff p > cutoff. Key
// sets must be identical.
Confusion MatrixConfusion(const PredictionMatrix& pred, const KillMatrix& truth,
                          double cutoff = kPairCutoff);
Prf MatrixMetrics(const PredictionMatrix& pred, const KillMatrix& truth,
                  double cutoff = kPairCutoff);

// Suite level, undetected is positive. Mutant sets must be identical.
Confusion SuiteConfusion(const SuiteVerdict& pred, const SuiteVerdict& truth);
Prf SuiteMetrics(const SuiteVerdict& pred, const SuiteVerdict& truth);

// Detected mutants over all mutants; 0 for an empty set.
double MutationScore(const SuiteVerdict& verdicts);
double ScoreError(const SuiteVerdict& pred, const SuiteVerdict& truth);

struct SweepRow {
  double threshold = 0.0;
  Prf suite;
  size_t predicted_detected = 0;
};

struct ThresholdSweep {
  std::vector<SweepRow> rows;
  size_t best = 0;  // index into rows

  const SweepRow& best_row() const { return rows.at(best); }
};

// Best row: highest F1, then highest precision, then the earlier threshold.
ThresholdSweep SweepThresholds(const PredictionMatrix& pred,
                               const KillMatrix& truth,
                               const std::vector<double>& thresholds = {
                                   kSweepThresholds.begin(),
                                   kSweepThresholds.end()});

// 0.01, 0.02, ..., 0.99.
std::vector<double> FineThresholds();

inline constexpr std::array<const char*, 6> kBucketLabels = {
    "0%", "(0,20]", "(20,40]", "(40,60]", "(60,80]", "(80,100]"};

struct ImportanceBucket {
  std::string label;
  size_t count = 0;
  size_t correct = 0;
  double accuracy = 0.0;  // 0 when empty
};

// Buckets mutants by the percentage of their covering tests that detect them
// and scores suite-verdict accuracy per bucket.
std::vector<ImportanceBucket> ImportanceBuckets(const SuiteVerdict& pred,
                                                const KillMatrix& truth);
size_t BucketIndex(size_t detecting, size_t covering);

nlohmann::json PrfToJson(const Prf& prf);
nlohmann::json ConfusionToJson(const Confusion& c);
nlohmann::json SweepToJson(const ThresholdSweep& sweep);
nlohmann::json BucketsToJson(const std::vector<ImportanceBucket>& buckets);

}  // namespace pmt

#endif  // PMT_METRICS_H_
