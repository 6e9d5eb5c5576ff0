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

#ifndef PMT_CLASSIFIER_H_
#define PMT_CLASSIFIER_H_

#include <array>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"
#include "pmt/encoder.h"
#include "pmt/prediction.h"
#include "pmt/random.h"

namespace pmt {

enum class ModelKind { kTransformer, kFeatureBaseline };

std::string_view ModelKindName(ModelKind kind);
// Accepts "transformer", "feature_baseline" and "baseline".
std::optional<ModelKind> ModelKindFromName(std::string_view name);

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ClassifierConfig {
  ModelKind kind = ModelKind::kTransformer;
  int layers = 2;
  int heads = 4;
  int embed_dim = 64;
  int ff_dim = 256;
  size_t window = kDefaultWindow;
  double dropout = 0.1;
  uint64_t seed = 0;

  void Validate() const;
  nlohmann::json ToJson() const;
  static ClassifierConfig FromJson(const nlohmann::json& j);

  friend bool operator==(const ClassifierConfig&,
                         const ClassifierConfig&) = default;
};

template <typename T>
using Matrix =
    Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

template <typename T>
struct Parameter {
  std::string name;
  Matrix<T> value;
  bool frozen = false;
};

// One matrix per parameter, same order and shapes.
template <typename T>
using Gradients = std::vector<Matrix<T>>;

// Binary detected/undetected classifier. Logit 0 is undetected, logit 1 is
// detected. Immutable during inference and safe to share across threads.
template <typename T>
class Classifier {
 public:
  virtual ~Classifier() = default;

  const ClassifierConfig& config() const { return config_; }
  size_t vocab_size() const { return vocab_size_; }

  std::vector<Parameter<T>>& parameters() { return params_; }
  const std::vector<Parameter<T>>& parameters() const { return params_; }
  Parameter<T>& parameter(std::string_view name);
  Gradients<T> ZeroGradients() const;
  size_t ParameterCount() const;

  virtual std::array<T, 2> Logits(const EncodedExample& example) const = 0;

  // Adds d(loss)/d(params) into `grads` and returns the loss
  // weight * -log p(label). Dropout is active iff `dropout_rng` is non-null.
  virtual T LossAndGradient(const EncodedExample& example, bool label,
                            T weight, Gradients<T>* grads,
                            Rng* dropout_rng) const = 0;

  // Multiply-accumulate count of one forward pass, times two.
  virtual double InferenceFlops(const EncodedExample& example) const = 0;

  // Probability of "detected", inference mode.
  T Predict(const EncodedExample& example) const;

 protected:
  Classifier(ClassifierConfig config, size_t vocab_size)
      : config_(std::move(config)), vocab_size_(vocab_size) {}

  void CheckIds(const std::vector<int>& ids) const;
  Matrix<T>& AddParameter(std::string name, int rows, int cols);

  ClassifierConfig config_;
  size_t vocab_size_;
  std::vector<Parameter<T>> params_;
};

// Seeded initialization. The classification head starts at zero, so an
// untrained model predicts exactly 0.5.
template <typename T>
std::unique_ptr<Classifier<T>> MakeClassifier(const ClassifierConfig& config,
                                              size_t vocab_size);

// Copies parameter values between precisions (or equal-shaped models).
template <typename To, typename From>
void CopyParameters(const Classifier<From>& from, Classifier<To>* to) {
  auto& dst = to->parameters();
  const auto& src = from.parameters();
  if (dst.size() != src.size()) throw ConfigError("parameter sets differ");
  for (size_t i = 0; i < src.size(); ++i) {
    if (dst[i].value.rows() != src[i].value.rows() ||
        dst[i].value.cols() != src[i].value.cols()) {
      throw ConfigError("parameter shape mismatch: " + src[i].name);
    }
    dst[i].value = src[i].value.template cast<To>();
    dst[i].frozen = src[i].frozen;
  }
}

using Model = Classifier<float>;

// Scores every example. For no-diff datasets each (original, mutated) pair
// becomes one entry: probability of the mutated variant, with the original's
// probability kept as the baseline. Output is ordered by (mutant, test)
// regardless of `jobs`.
PredictionMatrix PredictMatrix(const Model& model,
                               const std::vector<EncodedExample>& dataset,
                               int jobs = 1);

struct GradientCheckResult {
  double max_relative_error = 0.0;
  std::string worst_parameter;
  double loss = 0.0;
};

// Compares analytic gradients with central finite differences (step
// `epsilon`) in double precision, per parameter group. The relative error of
// a group is ||analytic - numeric|| / max(||analytic||, ||numeric||, 1e-12).
// The head is re-randomized first so that gradients reach every layer.
GradientCheckResult GradientCheck(const ClassifierConfig& config,
                                  size_t vocab_size,
                                  const EncodedExample& example, bool label,
                                  double epsilon = 1e-4,
                                  const std::vector<std::string>& frozen = {});

}  // namespace pmt

#endif  // PMT_CLASSIFIER_H_
