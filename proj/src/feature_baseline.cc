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

#include "pmt/feature_baseline.h"

#include "nn_ops.h"

namespace pmt {

template <typename T>
FeatureBaseline<T>::FeatureBaseline(const ClassifierConfig& config,
                                    size_t vocab_size)
    : Classifier<T>(config, vocab_size) {
  config.Validate();
  const int e = config.embed_dim;
  const int f = config.ff_dim;
  Rng rng(config.seed);
  nn::FillNormal(this->AddParameter("embedding", static_cast<int>(vocab_size), e),
                 rng, 0.1);
  nn::FillXavier(this->AddParameter("hidden.weight", kGroups * e + kOneHotWidth, f),
                 rng);
  this->AddParameter("hidden.bias", 1, f);
  this->AddParameter("out.weight", f, 2);
  this->AddParameter("out.bias", 1, 2);
}

template <typename T>
const std::vector<int>& FeatureBaseline<T>::Group(const FeatureInputs& f,
                                                  int g) const {
  switch (g) {
    case 0: return f.method_name;
    case 1: return f.test_name;
    case 2: return f.line_before;
    default: return f.line_after;
  }
}

template <typename T>
void FeatureBaseline<T>::Forward(const EncodedExample& example,
                                 Rng* dropout_rng, Cache* c) const {
  const FeatureInputs& f = example.features;
  const int e = this->config_.embed_dim;
  const auto& emb = this->params_[embedding_].value;
  c->input = Matrix<T>::Zero(1, kGroups * e + kOneHotWidth);
  for (int g = 0; g < kGroups; ++g) {
    const auto& ids = Group(f, g);
    this->CheckIds(ids);
    if (ids.empty()) continue;
    for (int id : ids) c->input.block(0, g * e, 1, e) += emb.row(id);
    c->input.block(0, g * e, 1, e) /= static_cast<T>(ids.size());
  }
  if (f.operator_kind < 0 || f.operator_kind >= kOperatorKindCount ||
      f.sub_operator < 0 || f.sub_operator >= kSubOperatorCount) {
    throw std::out_of_range("operator feature out of range");
  }
  c->input(0, kGroups * e + f.operator_kind) = T(1);
  c->input(0, kGroups * e + kOperatorKindCount + f.sub_operator) = T(1);

  c->hidden = (c->input * this->params_[hidden_weight_].value +
               this->params_[hidden_bias_].value)
                  .unaryExpr([](T v) { return std::tanh(v); });
  c->mask = nn::DropoutMask<T>(1, c->hidden.cols(), this->config_.dropout,
                               dropout_rng);
  Matrix<T> h = c->hidden;
  nn::ApplyMask(h, c->mask);
  Matrix<T> logits = h * this->params_[out_weight_].value +
                     this->params_[out_bias_].value;
  c->logits = {logits(0, 0), logits(0, 1)};
}

template <typename T>
std::array<T, 2> FeatureBaseline<T>::Logits(const EncodedExample& example) const {
  Cache c;
  Forward(example, nullptr, &c);
  return c.logits;
}

template <typename T>
T FeatureBaseline<T>::LossAndGradient(const EncodedExample& example, bool label,
                                      T weight, Gradients<T>* grads,
                                      Rng* dropout_rng) const {
  Cache c;
  Forward(example, dropout_rng, &c);
  std::array<T, 2> dlogits{};
  T loss = nn::SoftmaxCrossEntropy(c.logits, label, weight, &dlogits);
  auto& g = *grads;
  const int e = this->config_.embed_dim;

  Matrix<T> dlog(1, 2);
  dlog << dlogits[0], dlogits[1];
  Matrix<T> h = c.hidden;
  nn::ApplyMask(h, c.mask);
  g[out_weight_] += h.transpose() * dlog;
  g[out_bias_] += dlog;
  Matrix<T> dh = dlog * this->params_[out_weight_].value.transpose();
  nn::ApplyMask(dh, c.mask);
  Matrix<T> dpre = dh.array() * (T(1) - c.hidden.array().square());
  g[hidden_weight_] += c.input.transpose() * dpre;
  g[hidden_bias_] += dpre;
  Matrix<T> dinput = dpre * this->params_[hidden_weight_].value.transpose();
  for (int grp = 0; grp < kGroups; ++grp) {
    const auto& ids = Group(example.features, grp);
    if (ids.empty()) continue;
    Matrix<T> share = dinput.block(0, grp * e, 1, e) / static_cast<T>(ids.size());
    for (int id : ids) g[embedding_].row(id) += share;
  }
  for (size_t i = 0; i < this->params_.size(); ++i) {
    if (this->params_[i].frozen) g[i].setZero();
  }
  return loss;
}

template <typename T>
double FeatureBaseline<T>::InferenceFlops(const EncodedExample& example) const {
  const FeatureInputs& f = example.features;
  const double e = this->config_.embed_dim;
  const double hidden = this->config_.ff_dim;
  double tokens = static_cast<double>(f.method_name.size() + f.test_name.size() +
                                      f.line_before.size() + f.line_after.size());
  return tokens * e + 2 * (kGroups * e + kOneHotWidth) * hidden + 2 * hidden * 2;
}

template class FeatureBaseline<float>;
template class FeatureBaseline<double>;

}  // namespace pmt
