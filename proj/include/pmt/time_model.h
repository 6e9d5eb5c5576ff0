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

#ifndef PMT_TIME_MODEL_H_
#define PMT_TIME_MODEL_H_

#include "json.hpp"
#include "pmt/aggregation.h"
#include "pmt/groundtruth.h"
#include "pmt/prediction.h"

namespace pmt {

// Converts model FLOPs to interpreter-step units. One step is charged per
// `flops_per_step` FLOPs.
inline constexpr double kDefaultFlopsPerStep = 1000.0;

// All costs are in interpreter steps.
struct TimeModelReport {
  double full_execution_cost = 0.0;
  double prediction_cost = 0.0;
  double confirmation_cost = 0.0;
  double checking_cost = 0.0;  // prediction + confirmation
  size_t predicted_undetected = 0;
  // 1 - cost / full_execution_cost; negative when the predictor costs more
  // than running every covering pair.
  double prediction_savings = 0.0;
  double checking_savings = 0.0;
};

// Confirmation runs every covering test of each mutant the predictor marks
// undetected.
TimeModelReport CheckingTime(const SuiteVerdict& pred, const KillMatrix& truth,
                             const PredictionMatrix& inference,
                             double flops_per_step = kDefaultFlopsPerStep);
TimeModelReport CheckingTime(const SuiteVerdict& pred, const KillMatrix& truth,
                             double prediction_cost);

nlohmann::json TimeModelToJson(const TimeModelReport& report);

}  // namespace pmt

#endif  // PMT_TIME_MODEL_H_
