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

#include "pmt/metrics.h"

#include <algorithm>
#include <cmath>

namespace pmt {

namespace {

double Ratio(size_t num, size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

void Confusion::Add(bool predicted_positive, bool actually_positive) {
  if (predicted_positive && actually_positive) {
    ++tp;
  } else if (predicted_positive) {
    ++fp;
  } else if (actually_positive) {
    ++fn;
  } else {
    ++tn;
  }
}

Prf Confusion::Scores() const {
  Prf s;
  s.precision = Ratio(tp, tp + fp);
  s.recall = Ratio(tp, tp + fn);
  double sum = s.precision + s.recall;
  s.f1 = sum == 0.0 ? 0.0 : 2 * s.precision * s.recall / sum;
  return s;
}

Confusion MatrixConfusion(const PredictionMatrix& pred, const KillMatrix& truth,
                          double cutoff) {
  if (pred.size() != truth.size()) {
    throw MetricsError("prediction matrix has " + std::to_string(pred.size()) +
                       " pairs, ground truth has " +
                       std::to_string(truth.size()));
  }
  Confusion c;
  for (size_t i = 0; i < truth.size(); ++i) {
    const auto& t = truth.entries()[i];
    const auto& p = pred.entries()[i];
    if (p.mutant_id != t.mutant_id || p.test_id != t.test_id) {
      throw MetricsError("pair (" + t.mutant_id + ", " + t.test_id +
                         ") missing from predictions");
    }
    c.Add(p.probability > cutoff, t.detected);
  }
  return c;
}

Prf MatrixMetrics(const PredictionMatrix& pred, const KillMatrix& truth,
                  double cutoff) {
  return MatrixConfusion(pred, truth, cutoff).Scores();
}

Confusion SuiteConfusion(const SuiteVerdict& pred, const SuiteVerdict& truth) {
  if (pred.detected.size() != truth.detected.size()) {
    throw MetricsError("verdict sets differ in size");
  }
  Confusion c;
  for (auto pi = pred.detected.begin(), ti = truth.detected.begin();
       ti != truth.detected.end(); ++pi, ++ti) {
    if (pi->first != ti->first) {
      throw MetricsError("mutant " + ti->first + " missing from predictions");
    }
    c.Add(!pi->second, !ti->second);
  }
  return c;
}

Prf SuiteMetrics(const SuiteVerdict& pred, const SuiteVerdict& truth) {
  return SuiteConfusion(pred, truth).Scores();
}

double MutationScore(const SuiteVerdict& verdicts) {
  return Ratio(verdicts.DetectedCount(), verdicts.detected.size());
}

double ScoreError(const SuiteVerdict& pred, const SuiteVerdict& truth) {
  return std::abs(MutationScore(pred) - MutationScore(truth));
}

ThresholdSweep SweepThresholds(const PredictionMatrix& pred,
                               const KillMatrix& truth,
                               const std::vector<double>& thresholds) {
  SuiteVerdict gold = TruthVerdicts(truth);
  std::vector<std::string> ids = truth.MutantIds();
  ThresholdSweep sweep;
  for (double t : thresholds) {
    SuiteVerdict v = Aggregate(pred, t, ids);
    sweep.rows.push_back({t, SuiteMetrics(v, gold), v.DetectedCount()});
  }
  for (size_t i = 1; i < sweep.rows.size(); ++i) {
    const Prf& a = sweep.rows[i].suite;
    const Prf& b = sweep.rows[sweep.best].suite;
    if (a.f1 > b.f1 || (a.f1 == b.f1 && a.precision > b.precision)) {
      sweep.best = i;
    }
  }
  return sweep;
}

std::vector<double> FineThresholds() {
  std::vector<double> out;
  for (int i = 1; i <= 99; ++i) out.push_back(i / 100.0);
  return out;
}

size_t BucketIndex(size_t detecting, size_t covering) {
  if (covering == 0) throw MetricsError("mutant without covering tests");
  if (detecting == 0) return 0;
  // ceil(100 * detecting / covering / 20) in integers.
  size_t idx = (100 * detecting + 20 * covering - 1) / (20 * covering);
  return std::min<size_t>(idx, kBucketLabels.size() - 1);
}

std::vector<ImportanceBucket> ImportanceBuckets(const SuiteVerdict& pred,
                                                const KillMatrix& truth) {
  std::vector<ImportanceBucket> buckets(kBucketLabels.size());
  for (size_t i = 0; i < buckets.size(); ++i) buckets[i].label = kBucketLabels[i];
  for (const auto& id : truth.MutantIds()) {
    auto row = truth.Row(id);
    size_t detecting = 0;
    for (const auto* e : row) detecting += e->detected ? 1 : 0;
    auto it = pred.detected.find(id);
    if (it == pred.detected.end()) {
      throw MetricsError("mutant " + id + " missing from predictions");
    }
    auto& b = buckets[BucketIndex(detecting, row.size())];
    ++b.count;
    if (it->second == (detecting > 0)) ++b.correct;
  }
  for (auto& b : buckets) b.accuracy = Ratio(b.correct, b.count);
  return buckets;
}

nlohmann::json PrfToJson(const Prf& prf) {
  return {{"precision", prf.precision}, {"recall", prf.recall}, {"f1", prf.f1}};
}

nlohmann::json ConfusionToJson(const Confusion& c) {
  return {{"tp", c.tp}, {"fp", c.fp}, {"fn", c.fn}, {"tn", c.tn}};
}

nlohmann::json SweepToJson(const ThresholdSweep& sweep) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : sweep.rows) {
    nlohmann::json row = PrfToJson(r.suite);
    row["threshold"] = r.threshold;
    row["predicted_detected"] = r.predicted_detected;
    rows.push_back(row);
  }
  return {{"rows", rows}, {"best_threshold", sweep.best_row().threshold}};
}

nlohmann::json BucketsToJson(const std::vector<ImportanceBucket>& buckets) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& b : buckets) {
    out.push_back({{"bucket", b.label},
                   {"count", b.count},
                   {"correct", b.correct},
                   {"accuracy", b.accuracy}});
  }
  return out;
}

}  // namespace pmt
