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

#include "pmt/report.h"

#include <cstdio>
#include <sstream>

namespace pmt {

namespace {

std::string Fixed(double v, int digits = 3) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

}  // namespace

MetricsReport BuildReport(const PredictionMatrix& pred, const KillMatrix& truth,
                          const ReportOptions& options) {
  MetricsReport r;
  r.threshold = options.threshold;
  r.subtraction = options.subtraction;
  r.matrix_confusion = MatrixConfusion(pred, truth);
  r.matrix = r.matrix_confusion.Scores();

  const PredictionMatrix scored =
      options.subtraction ? SubtractBaseline(pred) : PredictionMatrix();
  const PredictionMatrix& suite_input = options.subtraction ? scored : pred;
  SuiteVerdict gold = TruthVerdicts(truth);
  SuiteVerdict verdict =
      Aggregate(suite_input, options.threshold, truth.MutantIds());
  r.suite_confusion = SuiteConfusion(verdict, gold);
  r.suite = r.suite_confusion.Scores();
  r.predicted_score = MutationScore(verdict);
  r.gold_score = MutationScore(gold);
  r.score_error = ScoreError(verdict, gold);
  r.mutants = gold.detected.size();
  r.pairs = truth.size();
  r.buckets = ImportanceBuckets(verdict, truth);
  if (options.sweep) {
    r.sweep = options.subtraction
                  ? SweepThresholds(suite_input, truth, FineThresholds())
                  : SweepThresholds(suite_input, truth);
  }
  if (options.time_model) {
    r.time_model = CheckingTime(verdict, truth, pred, options.flops_per_step);
  }
  return r;
}

double SelectSubtractionThreshold(const PredictionMatrix& val_pred,
                                  const KillMatrix& val_truth) {
  return SweepThresholds(SubtractBaseline(val_pred), val_truth,
                         FineThresholds())
      .best_row()
      .threshold;
}

nlohmann::json ReportToJson(const MetricsReport& r) {
  nlohmann::json j{
      {"threshold", r.threshold},
      {"mode", r.subtraction ? "subtraction" : "direct"},
      {"mutants", r.mutants},
      {"pairs", r.pairs},
      {"matrix", PrfToJson(r.matrix)},
      {"matrix_confusion", ConfusionToJson(r.matrix_confusion)},
      {"suite", PrfToJson(r.suite)},
      {"suite_confusion", ConfusionToJson(r.suite_confusion)},
      {"predicted_mutation_score", r.predicted_score},
      {"gold_mutation_score", r.gold_score},
      {"score_error", r.score_error},
      {"importance_buckets", BucketsToJson(r.buckets)},
  };
  if (r.sweep) j["sweep"] = SweepToJson(*r.sweep);
  if (r.time_model) j["time_model"] = TimeModelToJson(*r.time_model);
  return j;
}

std::string ReportToMarkdown(const MetricsReport& r) {
  std::ostringstream out;
  out << "# Prediction report\n\n";
  out << r.mutants << " mutants, " << r.pairs << " covering pairs. Suite "
      << "threshold " << Fixed(r.threshold, 2)
      << (r.subtraction ? " (subtraction mode)" : "") << ".\n\n";
  out << "| level | positive | precision | recall | F1 |\n";
  out << "|---|---|---|---|---|\n";
  out << "| matrix | detected | " << Fixed(r.matrix.precision) << " | "
      << Fixed(r.matrix.recall) << " | " << Fixed(r.matrix.f1) << " |\n";
  out << "| suite | undetected | " << Fixed(r.suite.precision) << " | "
      << Fixed(r.suite.recall) << " | " << Fixed(r.suite.f1) << " |\n\n";
  out << "Mutation score: predicted " << Fixed(r.predicted_score) << ", gold "
      << Fixed(r.gold_score) << ", error " << Fixed(r.score_error) << ".\n";
  if (r.sweep) {
    out << "\n## Threshold sweep\n\n";
    out << "| threshold | precision | recall | F1 | predicted detected |\n";
    out << "|---|---|---|---|---|\n";
    for (const auto& row : r.sweep->rows) {
      out << "| " << Fixed(row.threshold, 2) << " | "
          << Fixed(row.suite.precision) << " | " << Fixed(row.suite.recall)
          << " | " << Fixed(row.suite.f1) << " | " << row.predicted_detected
          << " |\n";
    }
    out << "\nBest threshold: " << Fixed(r.sweep->best_row().threshold, 2)
        << "\n";
  }
  out << "\n## Accuracy by share of detecting tests\n\n";
  out << "| bucket | mutants | accuracy |\n|---|---|---|\n";
  for (const auto& b : r.buckets) {
    out << "| " << b.label << " | " << b.count << " | " << Fixed(b.accuracy)
        << " |\n";
  }
  if (r.time_model) {
    const auto& t = *r.time_model;
    out << "\n## Checking cost (interpreter steps)\n\n";
    out << "| quantity | value |\n|---|---|\n";
    out << "| full execution | " << Fixed(t.full_execution_cost, 1) << " |\n";
    out << "| prediction only | " << Fixed(t.prediction_cost, 1) << " |\n";
    out << "| confirmation runs | " << Fixed(t.confirmation_cost, 1) << " |\n";
    out << "| prediction + confirmation | " << Fixed(t.checking_cost, 1)
        << " |\n";
    out << "| savings (checking) | " << Fixed(t.checking_savings) << " |\n";
  }
  return out.str();
}

std::string SweepToCsv(const ThresholdSweep& sweep) {
  std::ostringstream out;
  out << "threshold,precision,recall,f1,predicted_detected\n";
  for (const auto& row : sweep.rows) {
    out << Fixed(row.threshold, 2) << ',' << Fixed(row.suite.precision, 6)
        << ',' << Fixed(row.suite.recall, 6) << ',' << Fixed(row.suite.f1, 6)
        << ',' << row.predicted_detected << '\n';
  }
  return out.str();
}

std::string BucketsToCsv(const std::vector<ImportanceBucket>& buckets) {
  std::ostringstream out;
  out << "bucket,count,correct,accuracy\n";
  for (const auto& b : buckets) {
    out << '"' << b.label << "\"," << b.count << ',' << b.correct << ','
        << Fixed(b.accuracy, 6) << '\n';
  }
  return out.str();
}

}  // namespace pmt
