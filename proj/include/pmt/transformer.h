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

#ifndef PMT_TRANSFORMER_H_
#define PMT_TRANSFORMER_H_

#include <vector>

#include "pmt/classifier.h"

namespace pmt {

// Pre-norm transformer encoder over token + learned position embeddings. The
// final hidden state of position 0 (<CLS>) goes through a final layer norm and
// a linear head to two logits. <PAD> positions are dropped before attention,
// which is equivalent to masking them out as keys.
template <typename T>
class TransformerClassifier final : public Classifier<T> {
 public:
  TransformerClassifier(const ClassifierConfig& config, size_t vocab_size);

  std::array<T, 2> Logits(const EncodedExample& example) const override;
  T LossAndGradient(const EncodedExample& example, bool label, T weight,
                    Gradients<T>* grads, Rng* dropout_rng) const override;
  double InferenceFlops(const EncodedExample& example) const override;

 private:
  struct LayerIndex {
    int ln1_gain, ln1_bias, wq, bq, wk, bk, wv, bv, wo, bo;
    int ln2_gain, ln2_bias, w1, b1, w2, b2;
  };
  struct Cache;

  void Forward(const EncodedExample& example, Rng* dropout_rng,
               Cache* cache) const;
  const Matrix<T>& P(int index) const { return this->params_[index].value; }

  int token_embedding_ = 0;
  int position_embedding_ = 0;
  std::vector<LayerIndex> layers_;
  int final_gain_ = 0;
  int final_bias_ = 0;
  int head_weight_ = 0;
  int head_bias_ = 0;
};

extern template class TransformerClassifier<float>;
extern template class TransformerClassifier<double>;

}  // namespace pmt

#endif  // PMT_TRANSFORMER_H_
