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

#include "pmt/trainer.h"

#include <cmath>
#include <numeric>

#include "pmt/metrics.h"

namespace pmt {

namespace {

constexpr double kBeta1 = 0.9;
constexpr double kBeta2 = 0.999;
constexpr double kAdamEps = 1e-8;

bool LabelOf(const EncodedExample& ex) {
  if (!ex.label) {
    throw std::invalid_argument("training example (" + ex.mutant_id + ", " +
                                ex.test_id + ") has no label");
  }
  return *ex.label;
}

struct ValScores {
  Prf prf;
  double loss = 0.0;  // mean unweighted cross-entropy
};

ValScores Evaluate(const Model& model, const std::vector<EncodedExample>& data) {
  Confusion c;
  double loss = 0.0;
  for (const auto& ex : data) {
    double p = model.Predict(ex);
    bool label = LabelOf(ex);
    c.Add(p > 0.5, label);
    loss -= std::log(std::max(label ? p : 1.0 - p, 1e-12));
  }
  return {c.Scores(), loss / static_cast<double>(data.size())};
}

}  // namespace

void TrainConfig::Validate(size_t total_steps) const {
  if (epochs <= 0) throw ConfigError("epochs must be positive");
  if (batch_size == 0) throw ConfigError("batch_size must be positive");
  if (!(peak_learning_rate > 0)) {
    throw ConfigError("peak learning rate must be positive");
  }
  if (warmup_steps > total_steps) {
    throw ConfigError("warmup_steps (" + std::to_string(warmup_steps) +
                      ") exceeds total steps (" + std::to_string(total_steps) +
                      ")");
  }
  if (class_weights &&
      !(class_weights->first > 0 && class_weights->second > 0)) {
    throw ConfigError("class weights must be positive");
  }
}

nlohmann::json TrainConfig::ToJson() const {
  nlohmann::json j{{"epochs", epochs},
                   {"batch_size", batch_size},
                   {"peak_learning_rate", peak_learning_rate},
                   {"warmup_steps", warmup_steps},
                   {"grad_clip_norm", grad_clip_norm},
                   {"seed", seed}};
  if (class_weights) {
    j["class_weights"] = {class_weights->first, class_weights->second};
  }
  return j;
}

TrainConfig TrainConfig::FromJson(const nlohmann::json& j) {
  TrainConfig c;
  c.epochs = j.value("epochs", c.epochs);
  c.batch_size = j.value("batch_size", c.batch_size);
  c.peak_learning_rate = j.value("peak_learning_rate", c.peak_learning_rate);
  c.warmup_steps = j.value("warmup_steps", c.warmup_steps);
  c.grad_clip_norm = j.value("grad_clip_norm", c.grad_clip_norm);
  c.seed = j.value("seed", c.seed);
  if (j.contains("class_weights")) {
    c.class_weights = std::make_pair(j["class_weights"].at(0).get<double>(),
                                     j["class_weights"].at(1).get<double>());
  }
  return c;
}

nlohmann::json TrainingLog::ToJson() const {
  nlohmann::json epochs_json = nlohmann::json::array();
  for (const auto& e : epochs) {
    epochs_json.push_back({{"epoch", e.epoch},
                           {"train_loss", e.train_loss},
                           {"val_loss", e.val_loss},
                           {"val_precision", e.val_precision},
                           {"val_recall", e.val_recall},
                           {"val_f1", e.val_f1},
                           {"learning_rate", e.learning_rate}});
  }
  return {{"epochs", epochs_json},
          {"best_epoch", best_epoch},
          {"class_weights", {weight_detected, weight_undetected}},
          {"total_steps", total_steps}};
}

double LearningRate(const TrainConfig& config, size_t step, size_t total_steps) {
  const double peak = config.peak_learning_rate;
  if (step < config.warmup_steps) {
    return peak * static_cast<double>(step + 1) /
           static_cast<double>(config.warmup_steps);
  }
  size_t decay_steps = total_steps - config.warmup_steps;
  if (decay_steps == 0) return peak;
  double progress = static_cast<double>(step - config.warmup_steps) /
                    static_cast<double>(decay_steps);
  return 0.5 * peak * (1.0 + std::cos(M_PI * std::min(progress, 1.0)));
}

std::pair<double, double> InverseFrequencyWeights(
    const std::vector<EncodedExample>& examples) {
  double detected = 0;
  for (const auto& ex : examples) detected += LabelOf(ex) ? 1 : 0;
  double undetected = static_cast<double>(examples.size()) - detected;
  if (detected == 0 || undetected == 0) return {1.0, 1.0};
  double n = static_cast<double>(examples.size());
  return {n / (2 * detected), n / (2 * undetected)};
}

TrainResult Train(const std::vector<EncodedExample>& train,
                  const std::vector<EncodedExample>& val,
                  const TrainConfig& tc, const ClassifierConfig& mc,
                  size_t vocab_size,
                  const std::function<void(const EpochLog&)>& on_epoch) {
  if (train.empty() || val.empty()) {
    throw std::invalid_argument("training and validation sets must be non-empty");
  }
  const size_t steps_per_epoch = (train.size() + tc.batch_size - 1) / tc.batch_size;
  const size_t total_steps = steps_per_epoch * static_cast<size_t>(tc.epochs);
  tc.Validate(total_steps);

  TrainResult result;
  result.model = MakeClassifier<float>(mc, vocab_size);
  Model& model = *result.model;
  auto [w_det, w_undet] = tc.class_weights ? *tc.class_weights
                                           : InverseFrequencyWeights(train);
  result.log.weight_detected = w_det;
  result.log.weight_undetected = w_undet;
  result.log.total_steps = total_steps;

  auto& params = model.parameters();
  Gradients<float> m1 = model.ZeroGradients();
  Gradients<float> m2 = model.ZeroGradients();
  std::vector<Matrix<float>> best;
  double best_f1 = -1.0;
  double best_loss = 0.0;

  std::vector<size_t> order(train.size());
  std::iota(order.begin(), order.end(), 0);
  Rng shuffle_rng(MixSeed(tc.seed, 1));
  size_t step = 0;
  uint64_t example_counter = 0;

  for (int epoch = 1; epoch <= tc.epochs; ++epoch) {
    Shuffle(order, shuffle_rng);
    double epoch_loss = 0.0;
    double lr = 0.0;
    for (size_t start = 0; start < order.size(); start += tc.batch_size) {
      size_t end = std::min(order.size(), start + tc.batch_size);
      Gradients<float> grads = model.ZeroGradients();
      double batch_loss = 0.0;
      const float inv_batch = 1.0f / static_cast<float>(end - start);
      for (size_t i = start; i < end; ++i) {
        const EncodedExample& ex = train[order[i]];
        bool label = LabelOf(ex);
        float w = static_cast<float>(label ? w_det : w_undet) * inv_batch;
        Rng dropout_rng(MixSeed(tc.seed, 1000 + example_counter++));
        batch_loss += model.LossAndGradient(ex, label, w, &grads, &dropout_rng);
      }
      if (!std::isfinite(batch_loss)) {
        throw DivergenceError("non-finite loss at epoch " +
                              std::to_string(epoch) + ", step " +
                              std::to_string(step));
      }
      epoch_loss += batch_loss * static_cast<double>(end - start);

      double sq = 0.0;
      for (const auto& g : grads) sq += static_cast<double>(g.squaredNorm());
      double norm = std::sqrt(sq);
      if (!std::isfinite(norm)) {
        throw DivergenceError("non-finite gradient at step " +
                              std::to_string(step));
      }
      float clip = (tc.grad_clip_norm > 0 && norm > tc.grad_clip_norm)
                       ? static_cast<float>(tc.grad_clip_norm / norm)
                       : 1.0f;

      lr = LearningRate(tc, step, total_steps);
      ++step;
      const double bc1 = 1.0 - std::pow(kBeta1, static_cast<double>(step));
      const double bc2 = 1.0 - std::pow(kBeta2, static_cast<double>(step));
      const float step_size = static_cast<float>(lr / bc1);
      const float inv_bc2 = static_cast<float>(1.0 / bc2);
      for (size_t p = 0; p < params.size(); ++p) {
        if (params[p].frozen) continue;
        auto g = (grads[p].array() * clip);
        m1[p].array() = kBeta1 * m1[p].array() + (1 - kBeta1) * g;
        m2[p].array() = kBeta2 * m2[p].array() + (1 - kBeta2) * g.square();
        params[p].value.array() -=
            step_size * m1[p].array() /
            ((m2[p].array() * inv_bc2).sqrt() + static_cast<float>(kAdamEps));
      }
    }

    ValScores val_scores = Evaluate(model, val);
    EpochLog entry{epoch,
                   epoch_loss / static_cast<double>(train.size()),
                   val_scores.loss,
                   val_scores.prf.precision,
                   val_scores.prf.recall,
                   val_scores.prf.f1,
                   lr};
    result.log.epochs.push_back(entry);
    if (on_epoch) on_epoch(entry);
    if (val_scores.prf.f1 > best_f1 ||
        (val_scores.prf.f1 == best_f1 && val_scores.loss < best_loss)) {
      best_f1 = val_scores.prf.f1;
      best_loss = val_scores.loss;
      result.log.best_epoch = epoch;
      best.clear();
      for (const auto& p : params) best.push_back(p.value);
    }
  }
  for (size_t p = 0; p < params.size(); ++p) params[p].value = best[p];
  return result;
}

}  // namespace pmt
