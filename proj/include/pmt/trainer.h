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

#ifndef PMT_TRAINER_H_
#define PMT_TRAINER_H_

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "json.hpp"
#include "pmt/classifier.h"

namespace pmt {

struct TrainConfig {
  int epochs = 8;
  size_t batch_size = 32;
  double peak_learning_rate = 1e-3;
  size_t warmup_steps = 1000;
  // (w_detected, w_undetected). Unset: inverse class frequency, scaled so
  // the per-example mean weight is 1.
  std::optional<std::pair<double, double>> class_weights;
  double grad_clip_norm = 1.0;
  uint64_t seed = 0;

  void Validate(size_t total_steps) const;
  nlohmann::json ToJson() const;
  static TrainConfig FromJson(const nlohmann::json& j);
};

struct EpochLog {
  int epoch = 0;
  double train_loss = 0.0;
  double val_loss = 0.0;
  double val_precision = 0.0;
  double val_recall = 0.0;
  double val_f1 = 0.0;
  double learning_rate = 0.0;  // at the last step of the epoch

  friend bool operator==(const EpochLog&, const EpochLog&) = default;
};

struct TrainingLog {
  std::vector<EpochLog> epochs;
  int best_epoch = 0;
  double weight_detected = 1.0;
  double weight_undetected = 1.0;
  size_t total_steps = 0;

  nlohmann::json ToJson() const;
  friend bool operator==(const TrainingLog&, const TrainingLog&) = default;
};

struct TrainResult {
  std::unique_ptr<Model> model;
  TrainingLog log;
};

class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Linear warmup to the peak rate over `warmup_steps`, then cosine decay to
// zero at `total_steps`. `step` counts from 0.
double LearningRate(const TrainConfig& config, size_t step, size_t total_steps);

std::pair<double, double> InverseFrequencyWeights(
    const std::vector<EncodedExample>& examples);

// Minimizes class-weighted cross-entropy with Adam under the warmup + cosine
// schedule. Examples are reshuffled every epoch from `seed`. The returned
// model holds the parameters of the epoch with the best validation F1
// (detected = positive, cutoff 0.5); ties go to the lower validation loss,
// then to the earlier epoch.
TrainResult Train(const std::vector<EncodedExample>& train,
                  const std::vector<EncodedExample>& val,
                  const TrainConfig& train_config,
                  const ClassifierConfig& model_config, size_t vocab_size,
                  const std::function<void(const EpochLog&)>& on_epoch = {});

}  // namespace pmt

#endif  // PMT_TRAINER_H_
