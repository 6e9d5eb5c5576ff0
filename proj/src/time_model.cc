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

#include "pmt/time_model.h"

#include <stdexcept>

namespace pmt {

TimeModelReport CheckingTime(const SuiteVerdict& pred, const KillMatrix& truth,
                             const PredictionMatrix& inference,
                             double flops_per_step) {
  if (!(flops_per_step > 0)) {
    throw std::invalid_argument("flops_per_step must be positive");
  }
  double flops = 0.0;
  for (const auto& e : inference.entries()) flops += e.inference_flops;
  return CheckingTime(pred, truth, flops / flops_per_step);
}

TimeModelReport CheckingTime(const SuiteVerdict& pred, const KillMatrix& truth,
                             double prediction_cost) {
  TimeModelReport r;
  for (const auto& e : truth.entries()) {
    r.full_execution_cost += static_cast<double>(e.cost_steps);
  }
  r.prediction_cost = prediction_cost;
  for (const auto& [id, detected] : pred.detected) {
    if (detected) continue;
    ++r.predicted_undetected;
    for (const auto* e : truth.Row(id)) {
      r.confirmation_cost += static_cast<double>(e->cost_steps);
    }
  }
  r.checking_cost = r.prediction_cost + r.confirmation_cost;
  if (r.full_execution_cost > 0) {
    r.prediction_savings = 1.0 - r.prediction_cost / r.full_execution_cost;
    r.checking_savings = 1.0 - r.checking_cost / r.full_execution_cost;
  }
  return r;
}

nlohmann::json TimeModelToJson(const TimeModelReport& r) {
  return {{"full_execution_cost", r.full_execution_cost},
          {"prediction_cost", r.prediction_cost},
          {"confirmation_cost", r.confirmation_cost},
          {"checking_cost", r.checking_cost},
          {"predicted_undetected", r.predicted_undetected},
          {"prediction_savings", r.prediction_savings},
          {"checking_savings", r.checking_savings}};
}

}  // namespace pmt
