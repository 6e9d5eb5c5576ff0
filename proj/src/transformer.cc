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

#include "pmt/transformer.h"

#include <cmath>
#include <string>

#include "nn_ops.h"

namespace pmt {

template <typename T>
struct TransformerClassifier<T>::Cache {
  struct Layer {
    Matrix<T> input, norm1;
    nn::Vector<T> rstd1;
    Matrix<T> attn_in, q, k, v;
    std::vector<Matrix<T>> probs;  // per head, n x n
    Matrix<T> heads_out;
    Matrix<T> attn_mask;
    Matrix<T> mid, norm2;
    nn::Vector<T> rstd2;
    Matrix<T> ffn_in, pre_act, act;
    Matrix<T> ffn_mask;
  };

  std::vector<int> tokens;
  std::vector<int> positions;
  Matrix<T> embed_mask;
  std::vector<Layer> layers;
  Matrix<T> final_input;  // 1 x D, position 0 only
  Matrix<T> final_norm;
  nn::Vector<T> final_rstd;
  Matrix<T> cls;  // 1 x D after final layer norm
  std::array<T, 2> logits{};
};

template <typename T>
TransformerClassifier<T>::TransformerClassifier(const ClassifierConfig& config,
                                                size_t vocab_size)
    : Classifier<T>(config, vocab_size) {
  config.Validate();
  const int d = config.embed_dim;
  const int f = config.ff_dim;
  const int v = static_cast<int>(vocab_size);
  const int w = static_cast<int>(config.window);
  Rng rng(config.seed);

  token_embedding_ = static_cast<int>(this->params_.size());
  nn::FillNormal(this->AddParameter("token_embedding", v, d), rng, 0.02);
  position_embedding_ = static_cast<int>(this->params_.size());
  nn::FillNormal(this->AddParameter("position_embedding", w, d), rng, 0.02);

  for (int l = 0; l < config.layers; ++l) {
    std::string p = "layer" + std::to_string(l) + ".";
    LayerIndex idx{};
    auto add = [&](const std::string& name, int rows, int cols) {
      int i = static_cast<int>(this->params_.size());
      this->AddParameter(p + name, rows, cols);
      return i;
    };
    idx.ln1_gain = add("ln1.gain", 1, d);
    idx.ln1_bias = add("ln1.bias", 1, d);
    idx.wq = add("attn.wq", d, d);
    idx.bq = add("attn.bq", 1, d);
    idx.wk = add("attn.wk", d, d);
    idx.bk = add("attn.bk", 1, d);
    idx.wv = add("attn.wv", d, d);
    idx.bv = add("attn.bv", 1, d);
    idx.wo = add("attn.wo", d, d);
    idx.bo = add("attn.bo", 1, d);
    idx.ln2_gain = add("ln2.gain", 1, d);
    idx.ln2_bias = add("ln2.bias", 1, d);
    idx.w1 = add("ffn.w1", d, f);
    idx.b1 = add("ffn.b1", 1, f);
    idx.w2 = add("ffn.w2", f, d);
    idx.b2 = add("ffn.b2", 1, d);
    this->params_[idx.ln1_gain].value.setOnes();
    this->params_[idx.ln2_gain].value.setOnes();
    for (int wi : {idx.wq, idx.wk, idx.wv, idx.wo, idx.w1, idx.w2}) {
      nn::FillXavier(this->params_[wi].value, rng);
    }
    layers_.push_back(idx);
  }
  final_gain_ = static_cast<int>(this->params_.size());
  this->AddParameter("final_ln.gain", 1, d).setOnes();
  final_bias_ = static_cast<int>(this->params_.size());
  this->AddParameter("final_ln.bias", 1, d);
  head_weight_ = static_cast<int>(this->params_.size());
  this->AddParameter("head.weight", d, 2);
  head_bias_ = static_cast<int>(this->params_.size());
  this->AddParameter("head.bias", 1, 2);
}

template <typename T>
void TransformerClassifier<T>::Forward(const EncodedExample& example,
                                       Rng* dropout_rng, Cache* c) const {
  const auto& cfg = this->config_;
  this->CheckIds(example.ids);
  if (example.ids.size() > cfg.window) {
    throw std::out_of_range("example longer than the model window");
  }
  for (size_t i = 0; i < example.ids.size(); ++i) {
    if (example.ids[i] == Vocabulary::kPad) continue;
    c->tokens.push_back(example.ids[i]);
    c->positions.push_back(static_cast<int>(i));
  }
  if (c->tokens.empty()) throw std::invalid_argument("example has no tokens");
  const Eigen::Index n = static_cast<Eigen::Index>(c->tokens.size());
  const int d = cfg.embed_dim;
  const int heads = cfg.heads;
  const int dh = d / heads;
  const T scale = T(1) / std::sqrt(static_cast<T>(dh));

  Matrix<T> x(n, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    x.row(i) = P(token_embedding_).row(c->tokens[i]) +
               P(position_embedding_).row(c->positions[i]);
  }
  c->embed_mask = nn::DropoutMask<T>(n, d, cfg.dropout, dropout_rng);
  nn::ApplyMask(x, c->embed_mask);

  c->layers.resize(layers_.size());
  for (size_t l = 0; l < layers_.size(); ++l) {
    const LayerIndex& li = layers_[l];
    auto& lc = c->layers[l];
    lc.input = x;
    nn::LayerNormForward(x, P(li.ln1_gain), P(li.ln1_bias), &lc.norm1,
                         &lc.rstd1, &lc.attn_in);
    lc.q = (lc.attn_in * P(li.wq)).rowwise() + P(li.bq).row(0);
    lc.k = (lc.attn_in * P(li.wk)).rowwise() + P(li.bk).row(0);
    lc.v = (lc.attn_in * P(li.wv)).rowwise() + P(li.bv).row(0);
    lc.heads_out.resize(n, d);
    lc.probs.resize(heads);
    for (int h = 0; h < heads; ++h) {
      Matrix<T> scores =
          (lc.q.middleCols(h * dh, dh) * lc.k.middleCols(h * dh, dh).transpose()) *
          scale;
      for (Eigen::Index i = 0; i < n; ++i) {
        T m = scores.row(i).maxCoeff();
        scores.row(i) = (scores.row(i).array() - m).exp();
        scores.row(i) /= scores.row(i).sum();
      }
      lc.heads_out.middleCols(h * dh, dh) = scores * lc.v.middleCols(h * dh, dh);
      lc.probs[h] = std::move(scores);
    }
    Matrix<T> attn = (lc.heads_out * P(li.wo)).rowwise() + P(li.bo).row(0);
    lc.attn_mask = nn::DropoutMask<T>(n, d, cfg.dropout, dropout_rng);
    nn::ApplyMask(attn, lc.attn_mask);
    lc.mid = x + attn;

    nn::LayerNormForward(lc.mid, P(li.ln2_gain), P(li.ln2_bias), &lc.norm2,
                         &lc.rstd2, &lc.ffn_in);
    lc.pre_act = (lc.ffn_in * P(li.w1)).rowwise() + P(li.b1).row(0);
    lc.act = lc.pre_act.unaryExpr([](T v) { return nn::Gelu(v); });
    Matrix<T> ffn = (lc.act * P(li.w2)).rowwise() + P(li.b2).row(0);
    lc.ffn_mask = nn::DropoutMask<T>(n, d, cfg.dropout, dropout_rng);
    nn::ApplyMask(ffn, lc.ffn_mask);
    x = lc.mid + ffn;
  }

  c->final_input = x.topRows(1);
  nn::LayerNormForward(c->final_input, P(final_gain_), P(final_bias_),
                       &c->final_norm, &c->final_rstd, &c->cls);
  Matrix<T> logits = c->cls * P(head_weight_) + P(head_bias_);
  c->logits = {logits(0, 0), logits(0, 1)};
}

template <typename T>
std::array<T, 2> TransformerClassifier<T>::Logits(
    const EncodedExample& example) const {
  Cache cache;
  Forward(example, nullptr, &cache);
  return cache.logits;
}

template <typename T>
T TransformerClassifier<T>::LossAndGradient(const EncodedExample& example,
                                            bool label, T weight,
                                            Gradients<T>* grads,
                                            Rng* dropout_rng) const {
  Cache c;
  Forward(example, dropout_rng, &c);
  std::array<T, 2> dlogits{};
  T loss = nn::SoftmaxCrossEntropy(c.logits, label, weight, &dlogits);
  auto& g = *grads;

  const auto& cfg = this->config_;
  const Eigen::Index n = static_cast<Eigen::Index>(c.tokens.size());
  const int d = cfg.embed_dim;
  const int heads = cfg.heads;
  const int dh = d / heads;
  const T scale = T(1) / std::sqrt(static_cast<T>(dh));

  Matrix<T> dlog(1, 2);
  dlog << dlogits[0], dlogits[1];
  g[head_weight_] += c.cls.transpose() * dlog;
  g[head_bias_] += dlog;
  Matrix<T> dcls = dlog * P(head_weight_).transpose();

  Matrix<T> dfinal;
  nn::LayerNormBackward(dcls, c.final_norm, c.final_rstd, P(final_gain_),
                        &dfinal, &g[final_gain_], &g[final_bias_]);
  Matrix<T> dx = Matrix<T>::Zero(n, d);
  dx.row(0) = dfinal.row(0);

  for (size_t l = layers_.size(); l-- > 0;) {
    const LayerIndex& li = layers_[l];
    const auto& lc = c.layers[l];

    // x_out = mid + mask * (act W2 + b2)
    Matrix<T> dffn = dx;
    nn::ApplyMask(dffn, lc.ffn_mask);
    g[li.w2] += lc.act.transpose() * dffn;
    g[li.b2] += dffn.colwise().sum();
    Matrix<T> dact = dffn * P(li.w2).transpose();
    Matrix<T> dpre = dact.array() *
                     lc.pre_act.unaryExpr([](T v) { return nn::GeluGrad(v); }).array();
    g[li.w1] += lc.ffn_in.transpose() * dpre;
    g[li.b1] += dpre.colwise().sum();
    Matrix<T> dffn_in = dpre * P(li.w1).transpose();
    Matrix<T> dmid_ln;
    nn::LayerNormBackward(dffn_in, lc.norm2, lc.rstd2, P(li.ln2_gain),
                          &dmid_ln, &g[li.ln2_gain], &g[li.ln2_bias]);
    Matrix<T> dmid = dx + dmid_ln;

    // mid = input + mask * (heads_out Wo + bo)
    Matrix<T> dattn = dmid;
    nn::ApplyMask(dattn, lc.attn_mask);
    g[li.wo] += lc.heads_out.transpose() * dattn;
    g[li.bo] += dattn.colwise().sum();
    Matrix<T> dheads = dattn * P(li.wo).transpose();

    Matrix<T> dq(n, d), dk(n, d), dv(n, d);
    for (int h = 0; h < heads; ++h) {
      const Matrix<T>& prob = lc.probs[h];
      auto dout = dheads.middleCols(h * dh, dh);
      dv.middleCols(h * dh, dh) = prob.transpose() * dout;
      Matrix<T> dprob = dout * lc.v.middleCols(h * dh, dh).transpose();
      Matrix<T> dscores(n, n);
      for (Eigen::Index i = 0; i < n; ++i) {
        T dot = (dprob.row(i).array() * prob.row(i).array()).sum();
        dscores.row(i) = prob.row(i).array() * (dprob.row(i).array() - dot);
      }
      dscores *= scale;
      dq.middleCols(h * dh, dh) = dscores * lc.k.middleCols(h * dh, dh);
      dk.middleCols(h * dh, dh) = dscores.transpose() * lc.q.middleCols(h * dh, dh);
    }
    g[li.wq] += lc.attn_in.transpose() * dq;
    g[li.bq] += dq.colwise().sum();
    g[li.wk] += lc.attn_in.transpose() * dk;
    g[li.bk] += dk.colwise().sum();
    g[li.wv] += lc.attn_in.transpose() * dv;
    g[li.bv] += dv.colwise().sum();
    Matrix<T> dattn_in = dq * P(li.wq).transpose() + dk * P(li.wk).transpose() +
                         dv * P(li.wv).transpose();
    Matrix<T> dinput_ln;
    nn::LayerNormBackward(dattn_in, lc.norm1, lc.rstd1, P(li.ln1_gain),
                          &dinput_ln, &g[li.ln1_gain], &g[li.ln1_bias]);
    dx = dmid + dinput_ln;
  }

  nn::ApplyMask(dx, c.embed_mask);
  for (Eigen::Index i = 0; i < n; ++i) {
    g[token_embedding_].row(c.tokens[i]) += dx.row(i);
    g[position_embedding_].row(c.positions[i]) += dx.row(i);
  }
  for (size_t i = 0; i < this->params_.size(); ++i) {
    if (this->params_[i].frozen) g[i].setZero();
  }
  return loss;
}

template <typename T>
double TransformerClassifier<T>::InferenceFlops(
    const EncodedExample& example) const {
  double n = 0;
  for (int id : example.ids) n += id != Vocabulary::kPad ? 1 : 0;
  const double d = this->config_.embed_dim;
  const double f = this->config_.ff_dim;
  double per_layer = 2 * n * d * d * 4      // q, k, v, o projections
                     + 2 * n * n * d * 2    // scores and weighted values
                     + 2 * n * d * f * 2;   // feed-forward
  return per_layer * this->config_.layers + 2 * d * 2;
}

template class TransformerClassifier<float>;
template class TransformerClassifier<double>;

}  // namespace pmt
