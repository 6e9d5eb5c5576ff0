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

#ifndef PMT_REPORT_H_
#define PMT_REPORT_H_

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "pmt/metrics.h"
#include "pmt/time_model.h"

namespace pmt {

struct ReportOptions {
  double threshold = kDefaultThreshold;
  bool sweep = false;
  bool time_model = false;
  double flops_per_step = kDefaultFlopsPerStep;
  // Score suites by p(mutated) - p(original); needs no-diff predictions.
  bool subtraction = false;
};

struct MetricsReport {
  double threshold = 0.0;
  bool subtraction = false;
  Confusion matrix_confusion;
  Prf matrix;
  Confusion suite_confusion;
  Prf suite;
  double predicted_score = 0.0;
  double gold_score = 0.0;
  double score_error = 0.0;
  size_t mutants = 0;
  size_t pairs = 0;
  std::vector<ImportanceBucket> buckets;
  std::optional<ThresholdSweep> sweep;
  std::optional<TimeModelReport> time_model;
};

MetricsReport BuildReport(const PredictionMatrix& pred, const KillMatrix& truth,
                          const ReportOptions& options);

// Picks the subtraction-mode threshold on 0.01..0.99 by suite F1, then
// precision, on validation predictions.
double SelectSubtractionThreshold(const PredictionMatrix& val_pred,
                                  const KillMatrix& val_truth);

nlohmann::json ReportToJson(const MetricsReport& report);
std::string ReportToMarkdown(const MetricsReport& report);
std::string SweepToCsv(const ThresholdSweep& sweep);
std::string BucketsToCsv(const std::vector<ImportanceBucket>& buckets);

}  // namespace pmt

#endif  // PMT_REPORT_H_
