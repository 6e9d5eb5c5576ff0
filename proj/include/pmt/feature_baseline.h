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

#ifndef PMT_FEATURE_BASELINE_H_
#define PMT_FEATURE_BASELINE_H_

#include "pmt/classifier.h"

namespace pmt {

// Name-and-line feature model. Four token groups (source method name, test
// method name, mutated line before, mutated line after) are embedded and
// mean-pooled, concatenated with a one-hot of the operator kind and the
// replacement symbol, and classified by a two-layer feed-forward head. Method
// and test bodies are never read.
template <typename T>
class FeatureBaseline final : public Classifier<T> {
 public:
  static constexpr int kGroups = 4;
  static constexpr int kOneHotWidth = kOperatorKindCount + kSubOperatorCount;

  FeatureBaseline(const ClassifierConfig& config, size_t vocab_size);

  std::array<T, 2> Logits(const EncodedExample& example) const override;
  T LossAndGradient(const EncodedExample& example, bool label, T weight,
                    Gradients<T>* grads, Rng* dropout_rng) const override;
  double InferenceFlops(const EncodedExample& example) const override;

 private:
  struct Cache {
    Matrix<T> input;   // 1 x (4E + one-hot)
    Matrix<T> hidden;  // 1 x F, after tanh
    Matrix<T> mask;
    std::array<T, 2> logits{};
  };

  const std::vector<int>& Group(const FeatureInputs& f, int g) const;
  void Forward(const EncodedExample& example, Rng* dropout_rng,
               Cache* cache) const;

  int embedding_ = 0;
  int hidden_weight_ = 1;
  int hidden_bias_ = 2;
  int out_weight_ = 3;
  int out_bias_ = 4;
};

extern template class FeatureBaseline<float>;
extern template class FeatureBaseline<double>;

}  // namespace pmt

#endif  // PMT_FEATURE_BASELINE_H_
