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

// Command-line driver for the predictive mutation testing pipeline.

#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "pmt/checkpoint.h"
#include "pmt/hash.h"
#include "pmt/interpreter.h"
#include "pmt/pipeline.h"

namespace {

using pmt::fs::path;

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitDivergence = 3;

struct GlobalOptions {
  uint64_t seed = 0;
  int jobs = 1;
  uint64_t budget = pmt::kDefaultStepBudget;
  path work = "pmt-work";
};

struct TrainOptions {
  std::string model = "transformer";
  std::string config;
  int epochs = 0;
  path checkpoint_out;
};

pmt::SplitSpec MakeSpec(const std::string& mode,
                        const std::vector<std::string>& assignments) {
  pmt::SplitSpec spec;
  spec.mode = *pmt::SplitModeFromName(mode);
  for (const auto& a : assignments) {
    size_t eq = a.find('=');
    std::optional<pmt::SplitPart> part;
    if (eq != std::string::npos) part = pmt::SplitPartFromName(a.substr(eq + 1));
    if (!part) {
      throw CLI::ValidationError("--assign", "expected project=train|val|test");
    }
    spec.assignment[a.substr(0, eq)] = *part;
  }
  return spec;
}

std::pair<pmt::TrainConfig, pmt::ClassifierConfig> MakeTrainConfig(
    const TrainOptions& opts, uint64_t seed) {
  pmt::TrainConfig train;
  pmt::ClassifierConfig model;
  train.seed = seed;
  model.seed = seed;
  model.kind = *pmt::ModelKindFromName(opts.model);
  if (!opts.config.empty()) {
    pmt::ApplySettings(pmt::ParseKeyValue(pmt::ReadFile(opts.config)), &train,
                       &model);
  }
  if (opts.epochs > 0) train.epochs = opts.epochs;
  return {train, model};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Predictive mutation testing for MiniLang"};
  app.require_subcommand(1);
  GlobalOptions g;
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_option("--jobs", g.jobs, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--budget", g.budget, "Interpreter step budget per test")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("-w,--work", g.work, "Work directory")->capture_default_str();

  const std::vector<std::string> reprs = {"token-diff", "line-diff", "no-diff",
                                          "token_diff", "line_diff", "no_diff"};
  const std::vector<std::string> models = {"transformer", "baseline",
                                           "feature_baseline"};
  const std::vector<std::string> modes = {"same_project", "cross_project",
                                          "same-project", "cross-project"};
  const std::vector<std::string> parts = {"train", "val", "test"};

  path corpus;
  auto* mutate = app.add_subcommand("mutate", "Generate mutants.jsonl");
  mutate->add_option("corpus", corpus, "MiniLang file or directory")->required();

  auto* matrix = app.add_subcommand("matrix", "Build coverage.json and matrix.jsonl");
  matrix->add_option("corpus", corpus)->required();

  std::string repr = "token-diff";
  pmt::EncodeSettings enc;
  std::string vocab_path;
  auto* encode = app.add_subcommand("encode", "Encode pairs into dataset.jsonl");
  encode->add_option("corpus", corpus)->required();
  encode->add_option("--repr", repr)->check(CLI::IsMember(reprs))->capture_default_str();
  encode->add_option("--window", enc.window)
      ->check(CLI::Range(size_t{8}, pmt::kMaxWindow))
      ->capture_default_str();
  encode->add_option("--vocab-size", enc.vocab_size)->capture_default_str();
  encode->add_option("--vocab", vocab_path, "Reuse an existing vocab.json");

  std::string mode = "same_project";
  std::vector<std::string> assignments;
  auto* split = app.add_subcommand("split", "Write train/val/test.jsonl");
  split->add_option("--mode", mode)->check(CLI::IsMember(modes))->capture_default_str();
  split->add_option("--assign", assignments, "project=train|val|test");

  TrainOptions topts;
  auto* train = app.add_subcommand("train", "Train a classifier");
  train->add_option("--model", topts.model)->check(CLI::IsMember(models))->capture_default_str();
  train->add_option("--config", topts.config, "key = value settings file")
      ->check(CLI::ExistingFile);
  train->add_option("--epochs", topts.epochs);
  train->add_option("--out", topts.checkpoint_out, "Checkpoint path");

  path checkpoint;
  std::string part = "test";
  auto* predict = app.add_subcommand("predict", "Score a split");
  predict->add_option("--checkpoint", checkpoint)->check(CLI::ExistingFile);
  predict->add_option("--split", part)->check(CLI::IsMember(parts))->capture_default_str();

  pmt::ReportOptions ropts;
  auto* evaluate = app.add_subcommand("evaluate", "Write report.json and report.md");
  evaluate->add_option("--threshold", ropts.threshold)
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  evaluate->add_flag("--sweep", ropts.sweep);
  evaluate->add_flag("--subtraction", ropts.subtraction,
                     "Score p(mutated) - p(original) (no-diff datasets)");
  evaluate->add_flag("--time-model", ropts.time_model);
  evaluate->add_option("--flops-per-step", ropts.flops_per_step)->capture_default_str();

  auto* report = app.add_subcommand("report", "Evaluate with the checking-cost model");
  report->add_flag("--time-model", ropts.time_model);
  report->add_option("--threshold", ropts.threshold)->check(CLI::Range(0.0, 1.0));
  report->add_flag("--sweep", ropts.sweep);
  report->add_option("--flops-per-step", ropts.flops_per_step);

  auto* pipeline = app.add_subcommand("pipeline", "Run every step end to end");
  pipeline->add_option("corpus", corpus)->required();
  pipeline->add_option("--repr", repr)->check(CLI::IsMember(reprs));
  pipeline->add_option("--window", enc.window)->check(CLI::Range(size_t{8}, pmt::kMaxWindow));
  pipeline->add_option("--vocab", vocab_path);
  pipeline->add_option("--mode", mode)->check(CLI::IsMember(modes));
  pipeline->add_option("--model", topts.model)->check(CLI::IsMember(models));
  pipeline->add_option("--config", topts.config)->check(CLI::ExistingFile);
  pipeline->add_option("--epochs", topts.epochs);
  pipeline->add_option("--checkpoint", checkpoint, "Skip training, use this model")
      ->check(CLI::ExistingFile);
  pipeline->add_option("--threshold", ropts.threshold)->check(CLI::Range(0.0, 1.0));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    enc.repr = *pmt::RepresentationFromName(repr);
    if (!vocab_path.empty()) enc.vocab = vocab_path;
    const path ckpt_default = g.work / pmt::kModelFile;

    if (*mutate) {
      pmt::RunMutate(corpus, g.work);
    } else if (*matrix) {
      pmt::RunMatrix(corpus, g.work, g.budget, g.jobs);
    } else if (*encode) {
      pmt::RunEncode(corpus, g.work, enc);
    } else if (*split) {
      pmt::RunSplit(g.work, MakeSpec(mode, assignments), g.seed);
    } else if (*train) {
      auto [tc, mc] = MakeTrainConfig(topts, g.seed);
      auto log = pmt::RunTrain(g.work, tc, mc, topts.checkpoint_out);
      std::printf("best epoch %d, val F1 %.4f\n", log.best_epoch,
                  log.epochs.at(log.best_epoch - 1).val_f1);
    } else if (*predict) {
      pmt::RunPredict(g.work, checkpoint.empty() ? ckpt_default : checkpoint,
                      *pmt::SplitPartFromName(part), g.jobs);
    } else if (*evaluate || *report) {
      auto r = pmt::RunEvaluate(g.work, ropts);
      std::printf("suite F1 %.4f, matrix F1 %.4f, score error %.4f\n",
                  r.suite.f1, r.matrix.f1, r.score_error);
    } else if (*pipeline) {
      pmt::RunMutate(corpus, g.work);
      pmt::RunMatrix(corpus, g.work, g.budget, g.jobs);
      pmt::RunEncode(corpus, g.work, enc);
      pmt::RunSplit(g.work, MakeSpec(mode, assignments), g.seed);
      if (checkpoint.empty()) {
        auto [tc, mc] = MakeTrainConfig(topts, g.seed);
        pmt::RunTrain(g.work, tc, mc);
        checkpoint = ckpt_default;
      }
      pmt::RunPredict(g.work, checkpoint, pmt::SplitPart::kTest, g.jobs);
      ropts.sweep = true;
      ropts.time_model = true;
      auto r = pmt::RunEvaluate(g.work, ropts);
      std::printf("suite F1 %.4f, matrix F1 %.4f, score error %.4f\n",
                  r.suite.f1, r.matrix.f1, r.score_error);
    }
  } catch (const pmt::DivergenceError& e) {
    std::cerr << "pmt: training diverged: " << e.what() << "\n";
    return kExitDivergence;
  } catch (const pmt::ConfigError& e) {
    std::cerr << "pmt: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "pmt: " << e.what() << "\n";
    return kExitData;
  }
  return 0;
}
