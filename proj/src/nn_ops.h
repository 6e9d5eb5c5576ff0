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

// Building blocks shared by the classifiers. Internal to the library.

#ifndef PMT_SRC_NN_OPS_H_
#define PMT_SRC_NN_OPS_H_

#include <cmath>

#include "pmt/classifier.h"

namespace pmt::nn {

template <typename T>
using Vector = Eigen::Matrix<T, Eigen::Dynamic, 1>;

inline constexpr double kLayerNormEps = 1e-5;

template <typename T>
void FillNormal(Matrix<T>& m, Rng& rng, double stddev) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    m.data()[i] = static_cast<T>(Normal(rng) * stddev);
  }
}

// Glorot/Xavier uniform.
template <typename T>
void FillXavier(Matrix<T>& m, Rng& rng) {
  double limit = std::sqrt(6.0 / static_cast<double>(m.rows() + m.cols()));
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    m.data()[i] = static_cast<T>((2.0 * Uniform01(rng) - 1.0) * limit);
  }
}

// Row-wise layer norm. `gain`/`bias` are 1 x D.
template <typename T>
void LayerNormForward(const Matrix<T>& x, const Matrix<T>& gain,
                      const Matrix<T>& bias, Matrix<T>* normalized,
                      Vector<T>* rstd, Matrix<T>* out) {
  const Eigen::Index n = x.rows();
  const T d = static_cast<T>(x.cols());
  normalized->resize(x.rows(), x.cols());
  rstd->resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    T mean = x.row(i).sum() / d;
    auto centered = x.row(i).array() - mean;
    T var = centered.square().sum() / d;
    T r = T(1) / std::sqrt(var + static_cast<T>(kLayerNormEps));
    (*rstd)(i) = r;
    normalized->row(i) = centered * r;
  }
  *out = (normalized->array().rowwise() * gain.row(0).array()).rowwise() +
         bias.row(0).array();
}

template <typename T>
void LayerNormBackward(const Matrix<T>& dout, const Matrix<T>& normalized,
                       const Vector<T>& rstd, const Matrix<T>& gain,
                       Matrix<T>* dx, Matrix<T>* dgain, Matrix<T>* dbias) {
  const T d = static_cast<T>(dout.cols());
  *dgain += (dout.array() * normalized.array()).colwise().sum().matrix();
  *dbias += dout.colwise().sum();
  Matrix<T> dnorm = dout.array().rowwise() * gain.row(0).array();
  dx->resize(dout.rows(), dout.cols());
  for (Eigen::Index i = 0; i < dout.rows(); ++i) {
    T mean_d = dnorm.row(i).sum() / d;
    T mean_dn = (dnorm.row(i).array() * normalized.row(i).array()).sum() / d;
    dx->row(i) = rstd(i) * (dnorm.row(i).array() - mean_d -
                            normalized.row(i).array() * mean_dn);
  }
}

// tanh approximation of GELU and its derivative.
template <typename T>
T Gelu(T x) {
  const T c = static_cast<T>(0.7978845608028654);
  return T(0.5) * x * (T(1) + std::tanh(c * (x + T(0.044715) * x * x * x)));
}

template <typename T>
T GeluGrad(T x) {
  const T c = static_cast<T>(0.7978845608028654);
  T t = std::tanh(c * (x + T(0.044715) * x * x * x));
  return T(0.5) * (T(1) + t) +
         T(0.5) * x * (T(1) - t * t) * c * (T(1) + T(3 * 0.044715) * x * x);
}

// Inverted dropout mask: entries are 0 or 1/(1-p). Empty when inactive.
template <typename T>
Matrix<T> DropoutMask(Eigen::Index rows, Eigen::Index cols, double p,
                      Rng* rng) {
  if (!rng || p <= 0.0) return {};
  Matrix<T> mask(rows, cols);
  const T keep = static_cast<T>(1.0 / (1.0 - p));
  for (Eigen::Index i = 0; i < mask.size(); ++i) {
    mask.data()[i] = Uniform01(*rng) < p ? T(0) : keep;
  }
  return mask;
}

template <typename T>
void ApplyMask(Matrix<T>& m, const Matrix<T>& mask) {
  if (mask.size() != 0) m.array() *= mask.array();
}

// Stable two-class softmax cross-entropy. Returns loss and writes
// d(loss)/d(logits) scaled by `weight`.
template <typename T>
T SoftmaxCrossEntropy(const std::array<T, 2>& logits, bool label, T weight,
                      std::array<T, 2>* dlogits) {
  T m = std::max(logits[0], logits[1]);
  T e0 = std::exp(logits[0] - m);
  T e1 = std::exp(logits[1] - m);
  T z = e0 + e1;
  T p1 = e1 / z;
  T p0 = e0 / z;
  T log_z = m + std::log(z);
  T loss = log_z - logits[label ? 1 : 0];
  (*dlogits)[0] = weight * (p0 - (label ? T(0) : T(1)));
  (*dlogits)[1] = weight * (p1 - (label ? T(1) : T(0)));
  return weight * loss;
}

}  // namespace pmt::nn

#endif  // PMT_SRC_NN_OPS_H_
