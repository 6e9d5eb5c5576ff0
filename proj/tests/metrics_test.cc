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

#include <string>

#include "gtest/gtest.h"
#include "pmt/aggregation.h"
#include "pmt/metrics.h"
#include "pmt/random.h"
#include "pmt/report.h"
#include "pmt/time_model.h"

namespace pmt {
namespace {

PredictionEntry P(std::string m, std::string t, double p, double flops = 0) {
  return {std::move(m), std::move(t), p, std::nullopt, flops};
}

KillEntry K(std::string m, std::string t, bool detected, uint64_t cost = 10) {
  return {std::move(m), std::move(t), detected, cost,
          detected ? TestStatus::kAssertFail : TestStatus::kPass};
}

TEST(AggregateTest, StrictlyGreaterThanThreshold) {
  PredictionMatrix pm({P("a", "t1", 0.1), P("a", "t2", 0.3), P("b", "t1", 0.25),
                       P("c", "t1", 0.0)});
  SuiteVerdict v = Aggregate(pm, 0.25);
  EXPECT_TRUE(v.detected.at("a"));
  EXPECT_FALSE(v.detected.at("b"));
  EXPECT_FALSE(v.detected.at("c"));
  EXPECT_EQ(v.threshold, 0.25);
  EXPECT_FALSE(Aggregate(pm, 0.0).detected.at("c"));
  EXPECT_EQ(v.DetectedCount(), 1u);
}

TEST(AggregateTest, MissingMutantIsAnError) {
  PredictionMatrix pm({P("a", "t", 0.9)});
  EXPECT_THROW(Aggregate(pm, 0.5, {"a", "b"}), AggregationError);
}

TEST(AggregateTest, GroundTruthAsPredictionsReproducesVerdicts) {
  KillMatrix truth({K("a", "t1", false), K("a", "t2", true), K("b", "t1", false),
                    K("c", "t3", true)});
  SuiteVerdict gold = TruthVerdicts(truth);
  for (double t : {0.01, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99}) {
    SuiteVerdict v = Aggregate(MatrixAsPredictions(truth), t);
    EXPECT_EQ(v.detected, gold.detected) << t;
  }
}

TEST(AggregateTest, SubtractionUsesTheOriginalVariant) {
  PredictionEntry e = P("a", "t", 0.7);
  e.baseline_probability = 0.4;
  PredictionEntry f = P("b", "t", 0.2);
  f.baseline_probability = 0.5;
  PredictionMatrix sub = SubtractBaseline(PredictionMatrix({e, f}));
  EXPECT_NEAR(sub.Find("a", "t")->probability, 0.3, 1e-12);
  EXPECT_EQ(sub.Find("b", "t")->probability, 0.0);
  EXPECT_THROW(SubtractBaseline(PredictionMatrix({P("a", "t", 0.1)})),
               AggregationError);
}

struct ConfusionFixture {
  size_t tp, fp, fn, tn;
  double precision, recall, f1;
};

// Hand-computed confusion fixtures.
const ConfusionFixture kFixtures[] = {
    {3, 1, 1, 0, 0.75, 0.75, 0.75},
    {5, 0, 0, 5, 1.0, 1.0, 1.0},
    {0, 0, 4, 6, 0.0, 0.0, 0.0},
    {0, 3, 0, 7, 0.0, 0.0, 0.0},
    {1, 1, 0, 0, 0.5, 1.0, 2.0 / 3.0},
    {2, 0, 2, 1, 1.0, 0.5, 2.0 / 3.0},
    {4, 4, 4, 4, 0.5, 0.5, 0.5},
    {6, 2, 3, 9, 0.75, 6.0 / 9.0, 12.0 / 17.0},
    {1, 3, 0, 2, 0.25, 1.0, 0.4},
    {9, 1, 1, 0, 0.9, 0.9, 0.9},
};

// Builds a matrix with one pair per confusion cell entry.
void BuildPairs(const ConfusionFixture& f, PredictionMatrix* pred,
                KillMatrix* truth) {
  std::vector<PredictionEntry> p;
  std::vector<KillEntry> k;
  int n = 0;
  auto add = [&](size_t count, bool predicted, bool actual) {
    for (size_t i = 0; i < count; ++i) {
      std::string m = "m" + std::to_string(n++);
      p.push_back(P(m, "t", predicted ? 0.9 : 0.1));
      k.push_back(K(m, "t", actual));
    }
  };
  add(f.tp, true, true);
  add(f.fp, true, false);
  add(f.fn, false, true);
  add(f.tn, false, false);
  *pred = PredictionMatrix(p);
  *truth = KillMatrix(k);
}

TEST(MetricsTest, MatrixFixtures) {
  for (const auto& f : kFixtures) {
    PredictionMatrix pred;
    KillMatrix truth;
    BuildPairs(f, &pred, &truth);
    Confusion c = MatrixConfusion(pred, truth);
    EXPECT_EQ(c, (Confusion{f.tp, f.fp, f.fn, f.tn}));
    Prf s = c.Scores();
    EXPECT_DOUBLE_EQ(s.precision, f.precision);
    EXPECT_DOUBLE_EQ(s.recall, f.recall);
    EXPECT_DOUBLE_EQ(s.f1, f.f1);
  }
}

TEST(MetricsTest, SuiteFixturesUseUndetectedAsPositive) {
  for (const auto& f : kFixtures) {
    SuiteVerdict pred, truth;
    int n = 0;
    auto add = [&](size_t count, bool pred_undetected, bool truly_undetected) {
      for (size_t i = 0; i < count; ++i) {
        std::string m = "m" + std::to_string(n++);
        pred.detected[m] = !pred_undetected;
        truth.detected[m] = !truly_undetected;
      }
    };
    add(f.tp, true, true);
    add(f.fp, true, false);
    add(f.fn, false, true);
    add(f.tn, false, false);
    Prf s = SuiteMetrics(pred, truth);
    EXPECT_DOUBLE_EQ(s.precision, f.precision);
    EXPECT_DOUBLE_EQ(s.recall, f.recall);
    EXPECT_DOUBLE_EQ(s.f1, f.f1);
  }
}

TEST(MetricsTest, AllUndetectedPredictor) {
  SuiteVerdict pred, truth;
  for (int i = 0; i < 10; ++i) {
    pred.detected["m" + std::to_string(i)] = false;
    truth.detected["m" + std::to_string(i)] = i < 7;
  }
  Prf s = SuiteMetrics(pred, truth);
  EXPECT_DOUBLE_EQ(s.recall, 1.0);
  EXPECT_DOUBLE_EQ(s.precision, 0.3);
}

TEST(MetricsTest, KeyMismatchesAreErrors) {
  PredictionMatrix pred({P("a", "t", 0.9)});
  EXPECT_THROW(MatrixMetrics(pred, KillMatrix({K("a", "u", true)})),
               MetricsError);
  EXPECT_THROW(MatrixMetrics(pred, KillMatrix(std::vector<KillEntry>{})), MetricsError);
  SuiteVerdict a, b;
  a.detected["x"] = true;
  b.detected["y"] = true;
  EXPECT_THROW(SuiteMetrics(a, b), MetricsError);
}

TEST(MetricsTest, MutationScore) {
  SuiteVerdict v;
  for (int i = 0; i < 100; ++i) v.detected["m" + std::to_string(i)] = i < 59;
  EXPECT_DOUBLE_EQ(MutationScore(v), 0.59);
  EXPECT_DOUBLE_EQ(ScoreError(v, v), 0.0);
  SuiteVerdict w = v;
  w.detected["m99"] = true;
  EXPECT_NEAR(ScoreError(w, v), 0.01, 1e-12);
  EXPECT_EQ(MutationScore(SuiteVerdict{}), 0.0);
}

TEST(SweepTest, DegenerateMatrixGivesIdenticalRows) {
  KillMatrix truth({K("a", "t", true), K("b", "t", false), K("c", "t", true)});
  ThresholdSweep s = SweepThresholds(MatrixAsPredictions(truth), truth);
  ASSERT_EQ(s.rows.size(), 5u);
  for (const auto& row : s.rows) {
    EXPECT_EQ(row.suite, s.rows[0].suite);
    EXPECT_EQ(row.predicted_detected, 2u);
  }
  EXPECT_EQ(s.best, 0u);
}

TEST(SweepTest, BestByF1ThenPrecision) {
  // a, b, c undetected; d, e detected.
  KillMatrix truth({K("a", "t", false), K("b", "t", false), K("c", "t", false),
                    K("d", "t", true), K("e", "t", true)});
  PredictionMatrix pred({P("a", "t", 0.05), P("b", "t", 0.2), P("c", "t", 0.6),
                         P("d", "t", 0.8), P("e", "t", 0.95)});
  ThresholdSweep s = SweepThresholds(pred, truth);
  // Undetected predicted at 0.10: {a}; 0.25: {a,b}; 0.50: {a,b};
  // 0.75: {a,b,c}; 0.90: {a,b,c,d}.
  EXPECT_DOUBLE_EQ(s.rows[3].suite.f1, 1.0);
  EXPECT_DOUBLE_EQ(s.best_row().threshold, 0.75);
  EXPECT_DOUBLE_EQ(s.rows[4].suite.precision, 0.75);
}

TEST(SweepTest, TiesPreferPrecision) {
  // Two rows with equal F1 but different precision.
  KillMatrix truth({K("a", "t", false), K("b", "t", false), K("c", "t", true),
                    K("d", "t", true), K("e", "t", true), K("f", "t", true)});
  // At 0.3: predicted undetected {a}: P=1, R=.5, F1=2/3.
  // At 0.6: predicted undetected {a, b, c, d}: P=.5, R=1, F1=2/3.
  PredictionMatrix pred({P("a", "t", 0.2), P("b", "t", 0.4), P("c", "t", 0.5),
                         P("d", "t", 0.55), P("e", "t", 0.9), P("f", "t", 0.9)});
  ThresholdSweep s = SweepThresholds(pred, truth, {0.6, 0.3});
  EXPECT_DOUBLE_EQ(s.rows[0].suite.f1, s.rows[1].suite.f1);
  EXPECT_EQ(s.best, 1u);
}

TEST(SweepTest, MonotoneInThreshold) {
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<PredictionEntry> p;
    std::vector<KillEntry> k;
    for (int m = 0; m < 15; ++m) {
      for (int t = 0; t < 3; ++t) {
        std::string mid = "m" + std::to_string(m);
        std::string tid = "t" + std::to_string(t);
        p.push_back(P(mid, tid, Uniform01(rng)));
        k.push_back(K(mid, tid, Uniform01(rng) < 0.3));
      }
    }
    ThresholdSweep s = SweepThresholds(PredictionMatrix(p), KillMatrix(k),
                                       FineThresholds());
    for (size_t i = 1; i < s.rows.size(); ++i) {
      EXPECT_LE(s.rows[i].predicted_detected, s.rows[i - 1].predicted_detected);
      EXPECT_GE(s.rows[i].suite.recall, s.rows[i - 1].suite.recall);
    }
  }
}

TEST(BucketsTest, Edges) {
  EXPECT_EQ(BucketIndex(0, 5), 0u);
  EXPECT_EQ(BucketIndex(1, 5), 1u);   // 20%
  EXPECT_EQ(BucketIndex(1, 4), 2u);   // 25%
  EXPECT_EQ(BucketIndex(2, 5), 2u);   // 40%
  EXPECT_EQ(BucketIndex(1, 100), 1u);
  EXPECT_EQ(BucketIndex(3, 5), 3u);   // 60%
  EXPECT_EQ(BucketIndex(4, 5), 4u);   // 80%
  EXPECT_EQ(BucketIndex(81, 100), 5u);
  EXPECT_EQ(BucketIndex(5, 5), 5u);
  EXPECT_THROW(BucketIndex(0, 0), MetricsError);
}

TEST(BucketsTest, CountsAndAccuracy) {
  KillMatrix truth({K("a", "t1", false), K("a", "t2", false),  // 0%
                    K("b", "t1", true), K("b", "t2", true),    // 100%
                    K("c", "t1", true), K("c", "t2", false),   // 50%
                    K("d", "t1", true)});                      // 100%
  SuiteVerdict pred;
  pred.detected = {{"a", true}, {"b", true}, {"c", false}, {"d", true}};
  auto buckets = ImportanceBuckets(pred, truth);
  ASSERT_EQ(buckets.size(), 6u);
  size_t total = 0;
  for (const auto& b : buckets) total += b.count;
  EXPECT_EQ(total, 4u);
  EXPECT_EQ(buckets[0].count, 1u);
  EXPECT_EQ(buckets[0].accuracy, 0.0);
  EXPECT_EQ(buckets[3].count, 1u);
  EXPECT_EQ(buckets[3].correct, 0u);
  EXPECT_EQ(buckets[5].count, 2u);
  EXPECT_EQ(buckets[5].accuracy, 1.0);
}

TEST(TimeModelTest, CostsFollowTheFormula) {
  KillMatrix truth({K("a", "t1", false, 10), K("a", "t2", false, 20),
                    K("b", "t1", true, 5), K("c", "t3", true, 7)});
  SuiteVerdict pred;
  pred.detected = {{"a", false}, {"b", true}, {"c", false}};
  PredictionMatrix inference({P("a", "t1", 0, 1000), P("a", "t2", 0, 1000),
                              P("b", "t1", 0, 2000), P("c", "t3", 0, 4000)});
  TimeModelReport r = CheckingTime(pred, truth, inference, 1000.0);
  EXPECT_DOUBLE_EQ(r.full_execution_cost, 42.0);
  EXPECT_DOUBLE_EQ(r.prediction_cost, 8.0);
  EXPECT_DOUBLE_EQ(r.confirmation_cost, 37.0);
  EXPECT_DOUBLE_EQ(r.checking_cost, 45.0);
  EXPECT_EQ(r.predicted_undetected, 2u);
  EXPECT_DOUBLE_EQ(r.checking_savings, 1.0 - 45.0 / 42.0);
  EXPECT_GE(r.checking_cost, r.prediction_cost);
}

TEST(TimeModelTest, ExtremePredictors) {
  KillMatrix truth({K("a", "t1", true, 10), K("b", "t1", true, 30)});
  SuiteVerdict all_detected = TruthVerdicts(truth);
  TimeModelReport perfect = CheckingTime(all_detected, truth, 3.0);
  EXPECT_DOUBLE_EQ(perfect.checking_cost, 3.0);
  SuiteVerdict none;
  none.detected = {{"a", false}, {"b", false}};
  TimeModelReport pessimist = CheckingTime(none, truth, 3.0);
  EXPECT_DOUBLE_EQ(pessimist.checking_cost, 43.0);
  EXPECT_LT(pessimist.checking_savings, 0.0);
}

TEST(ReportTest, OracleIdentity) {
  KillMatrix truth({K("a", "t1", false), K("a", "t2", true), K("b", "t1", false),
                    K("c", "t3", true), K("d", "t3", false)});
  ReportOptions o;
  o.sweep = true;
  o.time_model = true;
  MetricsReport r = BuildReport(MatrixAsPredictions(truth), truth, o);
  EXPECT_EQ(r.matrix, (Prf{1, 1, 1}));
  EXPECT_EQ(r.suite, (Prf{1, 1, 1}));
  EXPECT_EQ(r.score_error, 0.0);
  EXPECT_DOUBLE_EQ(r.gold_score, 0.5);
  ASSERT_TRUE(r.sweep.has_value());
  nlohmann::json j = ReportToJson(r);
  EXPECT_EQ(j["suite"]["f1"], 1.0);
  EXPECT_EQ(j["mode"], "direct");
  EXPECT_NE(ReportToMarkdown(r).find("| suite | undetected | 1.000"),
            std::string::npos);
  EXPECT_EQ(SweepToCsv(*r.sweep).substr(0, 9), "threshold");
}

TEST(ReportTest, SubtractionThresholdFromValidation) {
  KillMatrix truth({K("a", "t", true), K("b", "t", false), K("c", "t", true)});
  auto entry = [](std::string m, double mut, double orig) {
    PredictionEntry e = P(std::move(m), "t", mut);
    e.baseline_probability = orig;
    return e;
  };
  // Differences: a 0.3, b 0.05, c 0.5. Any threshold in [0.05, 0.30) is
  // perfect; the first such fine threshold is 0.05.
  PredictionMatrix val({entry("a", 0.6, 0.3), entry("b", 0.45, 0.4),
                        entry("c", 0.9, 0.4)});
  EXPECT_DOUBLE_EQ(SelectSubtractionThreshold(val, truth), 0.05);
}

}  // namespace
}  // namespace pmt
