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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pmt/aggregation.h"
#include "pmt/ast.h"
#include "pmt/classifier.h"
#include "pmt/encoder.h"
#include "pmt/groundtruth.h"
#include "pmt/interpreter.h"
#include "pmt/metrics.h"
#include "pmt/pipeline.h"
#include "pmt/random.h"
#include "pmt/time_model.h"
#include "pmt/tokenizer.h"
#include "pmt/trainer.h"
#include "pmt/vocabulary.h"
#include "synthetic.h"

namespace pmt {
namespace {

namespace fs = std::filesystem;

// Pinned limits.
constexpr double kOracleSeconds = 60.0;
constexpr double kGradientSeconds = 30.0;
constexpr double kGradientTolerance = 1e-3;
constexpr double kLearnabilitySeconds = 600.0;
constexpr double kTransformerMinF1 = 0.95;
constexpr double kBaselineMaxF1 = 0.70;
constexpr double kLineDiffTolerance = 0.03;
constexpr double kMetricTolerance = 1e-12;

struct Outcome {
  bool pass = false;
  std::string detail;
};

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double Seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

std::string Fmt(const char* format, double a, double b = 0, double c = 0,
                double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), format, a, b, c, d);
  return buf;
}

struct CorpusTruth {
  std::vector<Project> projects;
  GroundTruth truth;
  double build_seconds = 0;
};

const CorpusTruth& Corpus() {
  static const CorpusTruth* corpus = [] {
    auto* c = new CorpusTruth;
    Timer timer;
    c->projects = LoadCorpus(PMT_CORPUS_DIR);
    c->truth = BuildGroundTruth(c->projects, MutateCorpus(c->projects),
                                kDefaultStepBudget, 1);
    c->build_seconds = timer.Seconds();
    return c;
  }();
  return *corpus;
}

const Project& ProjectNamed(const std::string& name) {
  for (const auto& p : Corpus().projects) {
    if (p.name == name) return p;
  }
  throw std::runtime_error("no project " + name);
}

std::string Splice(std::string_view text, size_t begin, size_t end,
                   std::string_view replacement) {
  std::string out(text.substr(0, begin));
  out += replacement;
  out += text.substr(end);
  return out;
}

// 1. Every test on every mutant, without coverage pruning.
Outcome OracleEquivalence() {
  Timer timer;
  const CorpusTruth& c = Corpus();
  size_t pairs = 0, agree = 0, pruned = 0, pruned_ok = 0;
  for (const Mutant& m : c.truth.mutants) {
    const Project& project = ProjectNamed(m.project);
    const std::string& source = project.program.source_text();
    if (source.substr(m.span.begin, m.span.size()) != m.before_text) {
      return {false, "span text mismatch for " + m.id};
    }
    Program mutated =
        Parse(Splice(source, m.span.begin, m.span.end, m.after_text));
    for (const TestDef& t : project.program.tests()) {
      TestOutcome run = RunTest(mutated, t.name, kDefaultStepBudget);
      bool detected = run.status != TestStatus::kPass;
      const KillEntry* e =
          c.truth.matrix.Find(m.id, QualifiedTestId(m.project, t.name));
      if (e != nullptr) {
        ++pairs;
        agree += e->detected == detected;
      } else {
        ++pruned;
        pruned_ok += !detected;
      }
    }
  }
  double seconds = timer.Seconds() + c.build_seconds;
  bool pass = pairs == c.truth.matrix.size() && agree == pairs &&
              pruned_ok == pruned && seconds < kOracleSeconds;
  return {pass, std::to_string(agree) + "/" + std::to_string(pairs) +
                    " covering pairs agree, " + std::to_string(pruned_ok) +
                    "/" + std::to_string(pruned) + " pruned pairs undetected" +
                    Fmt(", %.1fs", seconds)};
}

// 2. Aggregating ground truth reproduces the truth verdicts.
Outcome AggregationCorrectness() {
  const KillMatrix& matrix = Corpus().truth.matrix;
  std::map<std::string, bool> gold;
  for (const KillEntry& e : matrix.entries()) gold[e.mutant_id] |= e.detected;
  PredictionMatrix pred = MatrixAsPredictions(matrix);
  size_t mismatches = 0;
  for (double t : kSweepThresholds) {
    SuiteVerdict v = Aggregate(pred, t);
    if (v.detected != gold) ++mismatches;
  }
  size_t boundary_errors = 0;
  for (double t : kSweepThresholds) {
    PredictionMatrix at({{"m", "t1", t, std::nullopt, 0},
                         {"m", "t2", t * 0.5, std::nullopt, 0}});
    if (Aggregate(at, t).detected.at("m")) ++boundary_errors;
    PredictionMatrix above({{"m", "t1", std::nextafter(t, 1.0), std::nullopt, 0}});
    if (!Aggregate(above, t).detected.at("m")) ++boundary_errors;
  }
  return {mismatches == 0 && boundary_errors == 0,
          std::to_string(gold.size()) + " mutants x 5 thresholds, " +
              std::to_string(mismatches) + " mismatching thresholds, " +
              std::to_string(boundary_errors) + " boundary errors"};
}

std::vector<std::string> Mapped(const std::vector<std::string>& tokens,
                                const Vocabulary& vocab) {
  std::vector<std::string> out;
  for (const auto& t : tokens) out.push_back(vocab.Token(vocab.Id(t)));
  return out;
}

// Independent marker check on token strings.
bool WellFormed(const std::vector<int>& ids) {
  std::vector<size_t> pos;
  for (int marker : {Vocabulary::kBefore, Vocabulary::kAfter,
                     Vocabulary::kEndDiff, Vocabulary::kSep}) {
    if (std::count(ids.begin(), ids.end(), marker) != 1) return false;
    pos.push_back(static_cast<size_t>(
        std::find(ids.begin(), ids.end(), marker) - ids.begin()));
  }
  return !ids.empty() && ids[0] == Vocabulary::kCls &&
         std::count(ids.begin(), ids.end(), Vocabulary::kCls) == 1 &&
         pos[0] + 1 < pos[1] && pos[1] + 1 < pos[2] && pos[2] < pos[3];
}

// 3. Token-diff decode and marker grammar on the corpus.
Outcome EncodingRoundTrip() {
  const CorpusTruth& c = Corpus();
  Vocabulary vocab = BuildCorpusVocabulary(c.projects, c.truth.mutants,
                                           c.truth.matrix, kDefaultVocabSize);
  std::map<std::string, const Mutant*> by_id;
  for (const Mutant& m : c.truth.mutants) by_id[m.id] = &m;
  size_t checked = 0, round_trip = 0, examples = 0, grammar = 0;
  for (const KillEntry& e : c.truth.matrix.entries()) {
    const Mutant& m = *by_id.at(e.mutant_id);
    const Program& program = ProjectNamed(m.project).program;
    MethodSource method =
        MethodSourceOf(program, *program.FindFunction(m.function));
    TestSource test = TestSourceOf(
        program, *program.FindTest(TestNameFromId(e.test_id)), e.test_id);
    EncodedExample token = EncodeTokenDiff(method, m, test, vocab);
    EncodedExample line = EncodeLineDiff(method, m, test, vocab);
    for (const auto* ex : {&token, &line}) {
      ++examples;
      grammar += WellFormed(ex->ids) && MatchesMarkerGrammar(ex->ids);
    }
    if (token.truncated) continue;
    ++checked;
    std::string mutated_text =
        Splice(method.text, m.span.begin - method.offset,
               m.span.end - method.offset, m.after_text);
    DecodedDiff d = DecodeDiff(token, vocab);
    round_trip += d.original_method == Mapped(Tokenize(method.text), vocab) &&
                  d.mutated_method == Mapped(Tokenize(mutated_text), vocab) &&
                  d.test == Mapped(Tokenize(test.text), vocab);
  }
  return {checked > 0 && round_trip == checked && grammar == examples,
          std::to_string(round_trip) + "/" + std::to_string(checked) +
              " untruncated pairs decode exactly, " + std::to_string(grammar) +
              "/" + std::to_string(examples) + " examples well-formed"};
}

EncodedExample RandomSequence(Rng& rng, size_t length, size_t vocab) {
  auto token = [&] {
    return static_cast<int>(Vocabulary::kReservedCount +
                            UniformIndex(rng, vocab - Vocabulary::kReservedCount));
  };
  EncodedExample ex;
  ex.ids = {Vocabulary::kCls, token(), Vocabulary::kBefore, token(),
            Vocabulary::kAfter, token(), Vocabulary::kEndDiff};
  while (ex.ids.size() + 2 < length) ex.ids.push_back(token());
  ex.ids.push_back(Vocabulary::kSep);
  ex.ids.push_back(token());
  ex.features.method_name = {token()};
  ex.features.test_name = {token(), token()};
  ex.features.line_before = {token(), token(), token()};
  ex.features.line_after = {token(), token(), token()};
  return ex;
}

// 4. Analytic against central finite-difference gradients.
Outcome GradientAgreement() {
  Timer timer;
  constexpr size_t kVocab = 30;
  ClassifierConfig config;
  config.kind = ModelKind::kTransformer;
  config.layers = 1;
  config.heads = 2;
  config.embed_dim = 8;
  config.ff_dim = 16;
  config.window = 16;
  Rng rng(4);
  double worst = 0;
  std::string worst_name;
  for (int i = 0; i < 20; ++i) {
    config.seed = static_cast<uint64_t>(i);
    EncodedExample ex = RandomSequence(rng, 10 + UniformIndex(rng, 7), kVocab);
    GradientCheckResult r = GradientCheck(config, kVocab, ex, i % 2 == 0);
    if (r.max_relative_error >= worst) {
      worst = r.max_relative_error;
      worst_name = r.worst_parameter;
    }
  }
  double seconds = timer.Seconds();
  return {worst < kGradientTolerance && seconds < kGradientSeconds,
          Fmt("max relative error %.2e", worst) + " (" + worst_name + ")" +
              Fmt(" over 20 examples, %.1fs", seconds)};
}

double HeldOutF1(const Model& model, const std::vector<EncodedExample>& set) {
  Confusion c;
  for (const auto& ex : set) c.Add(model.Predict(ex) > kPairCutoff, *ex.label);
  return c.Scores().f1;
}

// 5. Transformer learns a context rule that the baseline cannot see.
Outcome Learnability() {
  Timer timer;
  testing::SyntheticOptions options;
  options.seed = 0;
  testing::SyntheticData data = testing::MakeSyntheticData(2000, 250, 250, options);

  TrainConfig tc;
  tc.epochs = 20;
  tc.batch_size = 16;
  tc.peak_learning_rate = 1e-3;
  tc.warmup_steps = 100;
  tc.seed = 0;
  ClassifierConfig mc;
  mc.kind = ModelKind::kTransformer;
  mc.layers = 2;
  mc.heads = 4;
  mc.embed_dim = 32;
  mc.ff_dim = 64;
  mc.window = options.window;
  mc.dropout = 0.1;
  mc.seed = 0;
  TrainResult transformer =
      Train(data.train, data.val, tc, mc, data.vocab.size());
  double transformer_f1 = HeldOutF1(*transformer.model, data.test);

  ClassifierConfig bc = mc;
  bc.kind = ModelKind::kFeatureBaseline;
  TrainConfig btc = tc;
  btc.peak_learning_rate = 3e-3;
  TrainResult baseline = Train(data.train, data.val, btc, bc, data.vocab.size());
  double baseline_f1 = HeldOutF1(*baseline.model, data.test);

  double seconds = timer.Seconds();
  return {transformer_f1 >= kTransformerMinF1 && baseline_f1 < kBaselineMaxF1 &&
              seconds < kLearnabilitySeconds,
          Fmt("transformer F1 %.4f (best epoch %.0f), baseline F1 %.4f, %.0fs",
              transformer_f1, transformer.log.best_epoch, baseline_f1, seconds)};
}

// 6. Shipped checkpoints on the corpus test split.
Outcome CorpusOrdering() {
  const fs::path ckpt = PMT_CHECKPOINT_DIR;
  const fs::path root = fs::temp_directory_path() / "pmt_acceptance_ordering";
  fs::remove_all(root);
  std::map<std::string, double> f1;
  for (auto repr : {Representation::kTokenDiff, Representation::kLineDiff}) {
    fs::path work = root / std::string(RepresentationName(repr));
    RunMutate(PMT_CORPUS_DIR, work);
    RunMatrix(PMT_CORPUS_DIR, work, kDefaultStepBudget, 1);
    EncodeSettings enc;
    enc.repr = repr;
    enc.vocab = ckpt / "vocab.json";
    RunEncode(PMT_CORPUS_DIR, work, enc);
    RunSplit(work, SplitSpec{}, 0);
    std::vector<std::string> models = {std::string(RepresentationName(repr))};
    if (repr == Representation::kTokenDiff) models.push_back("baseline");
    for (const auto& name : models) {
      RunPredict(work, ckpt / (name + ".ckpt"), SplitPart::kTest, 1);
      f1[name] = RunEvaluate(work, ReportOptions{}).matrix.f1;
    }
  }
  fs::remove_all(root);
  double token = f1.at("token_diff"), line = f1.at("line_diff"),
         base = f1.at("baseline");
  return {token >= base && std::abs(line - token) <= kLineDiffTolerance,
          Fmt("matrix F1 token-diff %.4f, line-diff %.4f, baseline %.4f", token,
              line, base)};
}

// 7. Hand-computed confusion fixtures.
Outcome MetricIdentities() {
  struct Fixture {
    size_t tp, fp, fn, tn;
    double p, r, f1;
  };
  const Fixture fixtures[] = {
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
  auto close = [](const Prf& s, const Fixture& f) {
    return std::abs(s.precision - f.p) <= kMetricTolerance &&
           std::abs(s.recall - f.r) <= kMetricTolerance &&
           std::abs(s.f1 - f.f1) <= kMetricTolerance;
  };
  size_t ok = 0;
  for (const Fixture& f : fixtures) {
    std::vector<PredictionEntry> pred;
    std::vector<KillEntry> truth;
    SuiteVerdict suite_pred, suite_truth;
    int n = 0;
    auto add = [&](size_t count, bool predicted, bool actual) {
      for (size_t i = 0; i < count; ++i) {
        std::string m = "m" + std::to_string(n++);
        pred.push_back({m, "t", predicted ? 0.8 : 0.2, std::nullopt, 0});
        truth.push_back({m, "t", actual, 1, TestStatus::kPass});
        // Suite level: positive means undetected.
        suite_pred.detected[m] = !predicted;
        suite_truth.detected[m] = !actual;
      }
    };
    add(f.tp, true, true);
    add(f.fp, true, false);
    add(f.fn, false, true);
    add(f.tn, false, false);
    ok += close(MatrixMetrics(PredictionMatrix(pred), KillMatrix(truth)), f) &&
          close(SuiteMetrics(suite_pred, suite_truth), f);
  }
  SuiteVerdict v;
  for (int i = 0; i < 100; ++i) v.detected["m" + std::to_string(i)] = i < 59;
  double score = MutationScore(v);
  return {ok == std::size(fixtures) && std::abs(score - 0.59) <= kMetricTolerance,
          std::to_string(ok) + "/10 fixtures exact" +
              Fmt(", mutation score %.2f", score)};
}

// 8. Randomized threshold monotonicity.
Outcome ThresholdMonotonicity() {
  Rng rng(8);
  std::vector<double> thresholds = FineThresholds();
  thresholds.insert(thresholds.end(), kSweepThresholds.begin(),
                    kSweepThresholds.end());
  std::sort(thresholds.begin(), thresholds.end());
  size_t violations = 0, comparisons = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<PredictionEntry> pred;
    std::vector<KillEntry> truth;
    size_t mutants = 5 + UniformIndex(rng, 40);
    for (size_t m = 0; m < mutants; ++m) {
      size_t tests = 1 + UniformIndex(rng, 6);
      for (size_t t = 0; t < tests; ++t) {
        std::string mid = "m" + std::to_string(m);
        std::string tid = "t" + std::to_string(t);
        // Half the probabilities sit on the 0.01 grid to hit thresholds.
        double p = Uniform01(rng);
        if (trial % 2 == 0) p = static_cast<double>(UniformIndex(rng, 101)) / 100;
        pred.push_back({mid, tid, p, std::nullopt, 0});
        truth.push_back({mid, tid, Uniform01(rng) < 0.4, 1, TestStatus::kPass});
      }
    }
    ThresholdSweep s =
        SweepThresholds(PredictionMatrix(pred), KillMatrix(truth), thresholds);
    for (size_t i = 1; i < s.rows.size(); ++i) {
      ++comparisons;
      violations += s.rows[i].predicted_detected > s.rows[i - 1].predicted_detected;
      violations += s.rows[i].suite.recall < s.rows[i - 1].suite.recall;
    }
  }
  return {violations == 0, std::to_string(violations) + " violations in " +
                               std::to_string(comparisons) +
                               " adjacent threshold pairs"};
}

// 9. Higher suite precision at equal recall lowers the checking cost.
Outcome CheckingTime() {
  Rng rng(9);
  // True positives are shared; false positive sets are nested so that each
  // more precise predictor flags a subset of the less precise one's mutants.
  constexpr size_t kTruePositives = 1134;  // divisible by 14 and 81
  constexpr size_t kUndetected = 1260;     // recall 0.9
  constexpr size_t kMutants = 5000;
  std::vector<KillEntry> entries;
  std::vector<std::string> ids;
  for (size_t m = 0; m < kMutants; ++m) {
    std::string id = "m" + std::to_string(10000 + m);
    ids.push_back(id);
    bool undetected = m < kUndetected;
    size_t tests = 1 + UniformIndex(rng, 5);
    size_t killer = UniformIndex(rng, tests);
    for (size_t t = 0; t < tests; ++t) {
      bool detected = !undetected && t == killer;
      entries.push_back({id, "t" + std::to_string(t), detected,
                         1 + UniformIndex(rng, 200),
                         detected ? TestStatus::kAssertFail : TestStatus::kPass});
    }
  }
  KillMatrix truth(entries);
  std::vector<size_t> detected_order;
  for (size_t m = kUndetected; m < kMutants; ++m) detected_order.push_back(m);
  Shuffle(detected_order, rng);

  auto predictor = [&](size_t false_positives) {
    SuiteVerdict v;
    for (size_t m = 0; m < kMutants; ++m) v.detected[ids[m]] = true;
    for (size_t m = 0; m < kTruePositives; ++m) v.detected[ids[m]] = false;
    for (size_t i = 0; i < false_positives; ++i) {
      v.detected[ids[detected_order[i]]] = false;
    }
    return v;
  };
  const double prediction_cost = 500.0;
  struct Point {
    double precision, recall, cost, savings;
  };
  std::vector<Point> points;
  // Precision 0.56, 0.65, 0.72, 0.81 and 0.90.
  for (size_t fp : {891u, 611u, 441u, 266u, 126u}) {
    SuiteVerdict v = predictor(fp);
    Prf s = SuiteMetrics(v, TruthVerdicts(truth));
    TimeModelReport r = pmt::CheckingTime(v, truth, prediction_cost);
    points.push_back({s.precision, s.recall, r.checking_cost, r.checking_savings});
  }
  bool equal_recall = true, monotone = true;
  for (size_t i = 1; i < points.size(); ++i) {
    equal_recall &= points[i].recall == points[0].recall;
    monotone &= points[i].precision > points[i - 1].precision &&
                points[i].cost < points[i - 1].cost &&
                points[i].savings > points[i - 1].savings;
  }
  const Point& low = points[0];
  const Point& high = points[3];
  bool exact = std::abs(low.precision - 0.56) < 1e-12 &&
               std::abs(high.precision - 0.81) < 1e-12;
  double reduction = 1.0 - high.cost / low.cost;
  return {exact && equal_recall && monotone && high.cost < low.cost,
          Fmt("precision %.2f cost %.0f vs precision %.2f cost %.0f",
              low.precision, low.cost, high.precision, high.cost) +
              Fmt(" at recall %.2f, %.1f%% less checking", low.recall,
                  100 * reduction)};
}

std::string Bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// 10. Two full runs produce identical artifacts.
Outcome PipelineDeterminism() {
  const fs::path root = fs::temp_directory_path() / "pmt_acceptance_determinism";
  fs::remove_all(root);
  TrainConfig tc;
  tc.epochs = 3;
  tc.batch_size = 16;
  tc.warmup_steps = 20;
  tc.seed = 0;
  ClassifierConfig mc;
  mc.layers = 1;
  mc.heads = 2;
  mc.embed_dim = 16;
  mc.ff_dim = 32;
  mc.seed = 0;
  ReportOptions ro;
  ro.sweep = true;
  ro.time_model = true;
  for (int run = 0; run < 2; ++run) {
    fs::path work = root / ("run" + std::to_string(run));
    int jobs = run + 1;  // thread count must not matter
    RunMutate(PMT_CORPUS_DIR, work);
    RunMatrix(PMT_CORPUS_DIR, work, kDefaultStepBudget, jobs);
    RunEncode(PMT_CORPUS_DIR, work, EncodeSettings{});
    RunSplit(work, SplitSpec{}, 0);
    RunTrain(work, tc, mc);
    RunPredict(work, work / kModelFile, SplitPart::kTest, jobs);
    RunEvaluate(work, ro);
  }
  std::vector<std::string> files = {kMutantsFile, kCoverageFile, kMatrixFile,
                                    kDatasetFile, kVocabFile, kModelFile,
                                    kTrainingLogFile, kReportJsonFile};
  for (SplitPart p : {SplitPart::kTrain, SplitPart::kVal, SplitPart::kTest}) {
    files.push_back(SplitFile(p));
  }
  files.push_back(PredictionsFile(SplitPart::kTest));
  std::vector<std::string> differing;
  for (const auto& f : files) {
    std::string a = Bytes(root / "run0" / f);
    if (a.empty() || a != Bytes(root / "run1" / f)) differing.push_back(f);
  }
  fs::remove_all(root);
  std::string detail = std::to_string(files.size() - differing.size()) + "/" +
                       std::to_string(files.size()) + " artifacts identical";
  for (const auto& f : differing) detail += ", differs: " + f;
  return {differing.empty(), detail};
}

int RunAll(const std::set<int>& only) {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"oracle equivalence", OracleEquivalence},
      {"aggregation", AggregationCorrectness},
      {"encoding round-trip", EncodingRoundTrip},
      {"gradient check", GradientAgreement},
      {"learnability", Learnability},
      {"corpus ordering", CorpusOrdering},
      {"metric identities", MetricIdentities},
      {"threshold monotonicity", ThresholdMonotonicity},
      {"checking time", CheckingTime},
      {"pipeline determinism", PipelineDeterminism},
  };
  int failed = 0, ran = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    if (!only.empty() && !only.count(static_cast<int>(i + 1))) continue;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    ++ran;
    failed += !o.pass;
    std::printf("[%s] %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %d criteria failed\n", failed, ran);
  return failed == 0 ? 0 : 1;
}

}  // namespace
}  // namespace pmt

// Optional arguments select criteria by number.
int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  return pmt::RunAll(only);
}
