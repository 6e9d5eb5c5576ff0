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

#include "pmt/classifier.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <thread>

#include "nn_ops.h"
#include "pmt/feature_baseline.h"
#include "pmt/transformer.h"

namespace pmt {

std::string_view ModelKindName(ModelKind kind) {
  return kind == ModelKind::kTransformer ? "transformer" : "feature_baseline";
}

std::optional<ModelKind> ModelKindFromName(std::string_view name) {
  if (name == "transformer") return ModelKind::kTransformer;
  if (name == "feature_baseline" || name == "baseline" ||
      name == "feature-baseline") {
    return ModelKind::kFeatureBaseline;
  }
  return std::nullopt;
}

void ClassifierConfig::Validate() const {
  if (embed_dim <= 0 || ff_dim <= 0) {
    throw ConfigError("embed_dim and ff_dim must be positive");
  }
  if (kind == ModelKind::kTransformer) {
    if (layers <= 0 || heads <= 0) {
      throw ConfigError("layers and heads must be positive");
    }
    if (embed_dim % heads != 0) {
      throw ConfigError("embed_dim " + std::to_string(embed_dim) +
                        " is not divisible by heads " + std::to_string(heads));
    }
  }
  if (window == 0 || window > kMaxWindow) {
    throw ConfigError("window must be in [1, " + std::to_string(kMaxWindow) +
                      "]");
  }
  if (!(dropout >= 0.0 && dropout < 1.0)) {
    throw ConfigError("dropout must be in [0, 1)");
  }
}

nlohmann::json ClassifierConfig::ToJson() const {
  return {{"model_kind", ModelKindName(kind)},
          {"layers", layers},
          {"heads", heads},
          {"embed_dim", embed_dim},
          {"ff_dim", ff_dim},
          {"window", window},
          {"dropout", dropout},
          {"seed", seed}};
}

ClassifierConfig ClassifierConfig::FromJson(const nlohmann::json& j) {
  ClassifierConfig c;
  auto kind = ModelKindFromName(j.value("model_kind", "transformer"));
  if (!kind) throw ConfigError("unknown model kind");
  c.kind = *kind;
  c.layers = j.value("layers", c.layers);
  c.heads = j.value("heads", c.heads);
  c.embed_dim = j.value("embed_dim", c.embed_dim);
  c.ff_dim = j.value("ff_dim", c.ff_dim);
  c.window = j.value("window", c.window);
  c.dropout = j.value("dropout", c.dropout);
  c.seed = j.value("seed", c.seed);
  return c;
}

template <typename T>
Parameter<T>& Classifier<T>::parameter(std::string_view name) {
  for (auto& p : params_) {
    if (p.name == name) return p;
  }
  throw std::out_of_range("no parameter named " + std::string(name));
}

template <typename T>
Gradients<T> Classifier<T>::ZeroGradients() const {
  Gradients<T> g;
  g.reserve(params_.size());
  for (const auto& p : params_) {
    g.push_back(Matrix<T>::Zero(p.value.rows(), p.value.cols()));
  }
  return g;
}

template <typename T>
size_t Classifier<T>::ParameterCount() const {
  size_t n = 0;
  for (const auto& p : params_) n += static_cast<size_t>(p.value.size());
  return n;
}

template <typename T>
T Classifier<T>::Predict(const EncodedExample& example) const {
  auto logits = Logits(example);
  // Two-class softmax; exactly 0.5 when the logits are equal.
  return T(1) / (T(1) + std::exp(logits[0] - logits[1]));
}

template <typename T>
void Classifier<T>::CheckIds(const std::vector<int>& ids) const {
  for (int id : ids) {
    if (id < 0 || static_cast<size_t>(id) >= vocab_size_) {
      throw std::out_of_range("token id " + std::to_string(id) +
                              " outside vocabulary of size " +
                              std::to_string(vocab_size_));
    }
  }
}

template <typename T>
Matrix<T>& Classifier<T>::AddParameter(std::string name, int rows, int cols) {
  params_.push_back({std::move(name), Matrix<T>::Zero(rows, cols), false});
  return params_.back().value;
}

template class Classifier<float>;
template class Classifier<double>;

template <typename T>
std::unique_ptr<Classifier<T>> MakeClassifier(const ClassifierConfig& config,
                                              size_t vocab_size) {
  config.Validate();
  if (vocab_size == 0) throw ConfigError("vocabulary is empty");
  if (config.kind == ModelKind::kTransformer) {
    return std::make_unique<TransformerClassifier<T>>(config, vocab_size);
  }
  return std::make_unique<FeatureBaseline<T>>(config, vocab_size);
}

template std::unique_ptr<Classifier<float>> MakeClassifier<float>(
    const ClassifierConfig&, size_t);
template std::unique_ptr<Classifier<double>> MakeClassifier<double>(
    const ClassifierConfig&, size_t);

PredictionMatrix PredictMatrix(const Model& model,
                               const std::vector<EncodedExample>& dataset,
                               int jobs) {
  std::vector<PredictionEntry> raw(dataset.size());
  std::atomic<size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    while (!failed.load()) {
      size_t i = next.fetch_add(1);
      if (i >= dataset.size()) return;
      try {
        const EncodedExample& ex = dataset[i];
        raw[i] = {ex.mutant_id, ex.test_id,
                  static_cast<double>(model.Predict(ex)), std::nullopt,
                  model.InferenceFlops(ex)};
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
        return;
      }
    }
  };
  jobs = std::max(1, jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (int t = 0; t < jobs; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  // Fold no-diff (original, mutated) pairs into one entry.
  std::map<std::pair<std::string, std::string>, PredictionEntry> merged;
  for (size_t i = 0; i < dataset.size(); ++i) {
    const EncodedExample& ex = dataset[i];
    auto key = std::make_pair(ex.mutant_id, ex.test_id);
    auto [it, inserted] = merged.try_emplace(key, raw[i]);
    PredictionEntry& entry = it->second;
    if (ex.representation == Representation::kNoDiff) {
      if (!inserted) entry.inference_flops += raw[i].inference_flops;
      if (ex.variant == "original") {
        entry.baseline_probability = raw[i].probability;
        if (inserted) entry.probability = 0.0;
      } else {
        entry.probability = raw[i].probability;
      }
    } else if (!inserted) {
      throw std::invalid_argument("duplicate example for pair (" +
                                  ex.mutant_id + ", " + ex.test_id + ")");
    }
  }
  std::vector<PredictionEntry> entries;
  entries.reserve(merged.size());
  for (auto& [key, e] : merged) entries.push_back(std::move(e));
  return PredictionMatrix(std::move(entries));
}

GradientCheckResult GradientCheck(const ClassifierConfig& config,
                                  size_t vocab_size,
                                  const EncodedExample& example, bool label,
                                  double epsilon,
                                  const std::vector<std::string>& frozen) {
  ClassifierConfig cfg = config;
  cfg.dropout = 0.0;
  auto model = MakeClassifier<double>(cfg, vocab_size);
  Rng rng(MixSeed(cfg.seed, 0x6772616463686b));
  for (auto& p : model->parameters()) {
    if (p.name.rfind("head.", 0) == 0 || p.name.rfind("out.", 0) == 0) {
      nn::FillNormal(p.value, rng, 0.5);
    }
    if (std::find(frozen.begin(), frozen.end(), p.name) != frozen.end()) {
      p.frozen = true;
    }
  }

  GradientCheckResult result;
  Gradients<double> analytic = model->ZeroGradients();
  result.loss = model->LossAndGradient(example, label, 1.0, &analytic, nullptr);

  auto loss_at = [&] {
    Gradients<double> scratch = model->ZeroGradients();
    return model->LossAndGradient(example, label, 1.0, &scratch, nullptr);
  };

  auto& params = model->parameters();
  for (size_t pi = 0; pi < params.size(); ++pi) {
    Matrix<double>& value = params[pi].value;
    Matrix<double> numeric = Matrix<double>::Zero(value.rows(), value.cols());
    if (!params[pi].frozen) {
      for (Eigen::Index k = 0; k < value.size(); ++k) {
        double saved = value.data()[k];
        value.data()[k] = saved + epsilon;
        double plus = loss_at();
        value.data()[k] = saved - epsilon;
        double minus = loss_at();
        value.data()[k] = saved;
        numeric.data()[k] = (plus - minus) / (2 * epsilon);
      }
    }
    double diff = (analytic[pi] - numeric).norm();
    double scale = std::max({analytic[pi].norm(), numeric.norm(), 1e-12});
    double rel = diff / scale;
    // Groups whose true gradient vanishes (unused embedding rows etc.) are
    // compared absolutely.
    if (analytic[pi].norm() < 1e-10 && numeric.norm() < 1e-10) rel = 0.0;
    if (rel > result.max_relative_error) {
      result.max_relative_error = rel;
      result.worst_parameter = params[pi].name;
    }
  }
  return result;
}

}  // namespace pmt
