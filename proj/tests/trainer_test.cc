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

#include <cmath>
#include <limits>

#include "gtest/gtest.h"
#include "pmt/trainer.h"
#include "pmt/vocabulary.h"
#include "synthetic.h"

namespace pmt {
namespace {

EncodedExample Labelled(std::vector<int> ids, bool label) {
  EncodedExample ex;
  ex.ids = std::move(ids);
  ex.label = label;
  ex.features.method_name = {ex.ids[1]};
  ex.features.test_name = {ex.ids.back()};
  ex.features.line_before = {ex.ids[1]};
  ex.features.line_after = {ex.ids[2]};
  return ex;
}

ClassifierConfig Small(ModelKind kind = ModelKind::kTransformer) {
  ClassifierConfig c;
  c.kind = kind;
  c.layers = 1;
  c.heads = 2;
  c.embed_dim = 8;
  c.ff_dim = 16;
  c.window = 16;
  c.dropout = 0.0;
  return c;
}

TEST(LearningRateTest, WarmupThenCosine) {
  TrainConfig c;
  c.peak_learning_rate = 0.01;
  c.warmup_steps = 10;
  const size_t total = 110;
  EXPECT_DOUBLE_EQ(LearningRate(c, 0, total), 0.001);
  EXPECT_DOUBLE_EQ(LearningRate(c, 4, total), 0.005);
  EXPECT_DOUBLE_EQ(LearningRate(c, 9, total), 0.01);
  EXPECT_DOUBLE_EQ(LearningRate(c, 10, total), 0.01);
  // Halfway through the decay: cos(pi/2) = 0.
  EXPECT_NEAR(LearningRate(c, 60, total), 0.005, 1e-12);
  EXPECT_NEAR(LearningRate(c, 109, total),
              0.005 * (1 + std::cos(M_PI * 99.0 / 100.0)), 1e-12);
  for (size_t s = 11; s < total; ++s) {
    EXPECT_LE(LearningRate(c, s, total), LearningRate(c, s - 1, total));
  }
}

TEST(ClassWeightsTest, InverseFrequencyHasMeanOne) {
  std::vector<EncodedExample> data;
  for (int i = 0; i < 10; ++i) data.push_back(Labelled({2, 8, 9, 3}, i < 3));
  auto [wd, wu] = InverseFrequencyWeights(data);
  // 3 detected, 7 undetected.
  EXPECT_DOUBLE_EQ(wd, 10.0 / 6.0);
  EXPECT_DOUBLE_EQ(wu, 10.0 / 14.0);
  EXPECT_DOUBLE_EQ((3 * wd + 7 * wu) / 10.0, 1.0);
  EXPECT_DOUBLE_EQ(3 * wd, 7 * wu);
  std::vector<EncodedExample> one_class(4, Labelled({2, 8, 9, 3}, true));
  EXPECT_EQ(InverseFrequencyWeights(one_class), std::make_pair(1.0, 1.0));
}

TEST(TrainConfigTest, Validation) {
  TrainConfig c;
  c.warmup_steps = 11;
  EXPECT_THROW(c.Validate(10), ConfigError);
  c.warmup_steps = 10;
  EXPECT_NO_THROW(c.Validate(10));
  c.class_weights = std::make_pair(1.0, 0.0);
  EXPECT_THROW(c.Validate(10), ConfigError);
  TrainConfig d;
  d.class_weights = std::make_pair(2.0, 0.5);
  TrainConfig back = TrainConfig::FromJson(d.ToJson());
  EXPECT_EQ(back.class_weights, d.class_weights);
  EXPECT_EQ(back.warmup_steps, 1000u);
}

TEST(TrainTest, MemorizesOneRepeatedExample) {
  std::vector<EncodedExample> data(16, Labelled({2, 8, 4, 9, 5, 10, 6, 3, 11}, true));
  TrainConfig tc;
  tc.epochs = 30;
  tc.batch_size = 4;
  tc.peak_learning_rate = 0.01;
  tc.warmup_steps = 5;
  for (ModelKind kind : {ModelKind::kTransformer, ModelKind::kFeatureBaseline}) {
    TrainResult r = Train(data, data, tc, Small(kind), 16);
    EXPECT_LT(r.log.epochs.back().train_loss, 0.01);
    EXPECT_GT(r.model->Predict(data[0]), 0.99f);
  }
}

TEST(TrainTest, DeterministicLog) {
  testing::SyntheticOptions so;
  so.window = 64;
  auto d = testing::MakeSyntheticData(120, 40, 0, so);
  TrainConfig tc;
  tc.epochs = 3;
  tc.batch_size = 8;
  tc.warmup_steps = 10;
  tc.seed = 7;
  ClassifierConfig mc = Small();
  mc.window = 64;
  mc.dropout = 0.1;
  TrainResult a = Train(d.train, d.val, tc, mc, d.vocab.size());
  TrainResult b = Train(d.train, d.val, tc, mc, d.vocab.size());
  EXPECT_EQ(a.log, b.log);
  for (size_t i = 0; i < a.model->parameters().size(); ++i) {
    EXPECT_EQ(a.model->parameters()[i].value, b.model->parameters()[i].value);
  }
  // Kept epoch: best validation F1, then lowest validation loss.
  int best = 1;
  for (const auto& e : a.log.epochs) {
    const auto& b = a.log.epochs[best - 1];
    if (e.val_f1 > b.val_f1 || (e.val_f1 == b.val_f1 && e.val_loss < b.val_loss)) {
      best = e.epoch;
    }
  }
  EXPECT_EQ(a.log.best_epoch, best);
  EXPECT_EQ(a.log.total_steps, 3u * 15u);
}

TEST(TrainTest, EpochCallbackSeesEveryEpoch) {
  std::vector<EncodedExample> data = {Labelled({2, 8, 3, 9}, true),
                                      Labelled({2, 9, 3, 8}, false)};
  TrainConfig tc;
  tc.epochs = 4;
  tc.batch_size = 2;
  tc.warmup_steps = 1;
  int calls = 0;
  Train(data, data, tc, Small(), 16, [&](const EpochLog& e) {
    EXPECT_EQ(e.epoch, ++calls);
  });
  EXPECT_EQ(calls, 4);
}

TEST(TrainTest, DivergenceIsReported) {
  std::vector<EncodedExample> data = {Labelled({2, 8, 3, 9}, true),
                                      Labelled({2, 9, 3, 8}, false)};
  TrainConfig tc;
  tc.epochs = 5;
  tc.batch_size = 1;
  tc.warmup_steps = 0;
  tc.grad_clip_norm = 0;
  tc.peak_learning_rate = std::numeric_limits<double>::infinity();
  EXPECT_THROW(Train(data, data, tc, Small(), 16), DivergenceError);
}

TEST(TrainTest, RejectsBadInput) {
  TrainConfig tc;
  tc.warmup_steps = 0;
  std::vector<EncodedExample> data = {Labelled({2, 8, 3, 9}, true)};
  EXPECT_THROW(Train({}, data, tc, Small(), 16), std::invalid_argument);
  EncodedExample unlabeled = data[0];
  unlabeled.label.reset();
  EXPECT_THROW(Train({unlabeled}, data, tc, Small(), 16), std::invalid_argument);
  tc.warmup_steps = 1000;
  EXPECT_THROW(Train(data, data, tc, Small(), 16), ConfigError);
}

}  // namespace
}  // namespace pmt
