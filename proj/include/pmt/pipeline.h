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

#ifndef PMT_PIPELINE_H_
#define PMT_PIPELINE_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "pmt/ast.h"
#include "pmt/classifier.h"
#include "pmt/encoder.h"
#include "pmt/groundtruth.h"
#include "pmt/mutation.h"
#include "pmt/report.h"
#include "pmt/split.h"
#include "pmt/trainer.h"
#include "pmt/vocabulary.h"

namespace pmt {

namespace fs = std::filesystem;

// Bad or inconsistent input data (exit code 2 in the CLI).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr char kMutantsFile[] = "mutants.jsonl";
inline constexpr char kCoverageFile[] = "coverage.json";
inline constexpr char kMatrixFile[] = "matrix.jsonl";
inline constexpr char kDatasetFile[] = "dataset.jsonl";
inline constexpr char kVocabFile[] = "vocab.json";
inline constexpr char kModelFile[] = "model.ckpt";
inline constexpr char kTrainingLogFile[] = "training_log.json";
inline constexpr char kReportJsonFile[] = "report.json";
inline constexpr char kReportMdFile[] = "report.md";
inline constexpr char kSweepCsvFile[] = "sweep.csv";
inline constexpr char kBucketsCsvFile[] = "buckets.csv";
inline constexpr size_t kDefaultVocabSize = 4096;

std::string SplitFile(SplitPart part);        // train.jsonl, ...
std::string PredictionsFile(SplitPart part);  // predictions.jsonl for test

// One MiniLang file is one project, named after the file stem.
struct Project {
  std::string name;
  fs::path path;
  std::string source_hash;
  Program program;
};

Project LoadProject(const fs::path& path);
// A directory loads every *.mini file in name order; a file loads itself.
std::vector<Project> LoadCorpus(const fs::path& path);
std::string CorpusHash(const std::vector<Project>& projects);

struct GroundTruth {
  std::vector<Mutant> mutants;
  std::map<std::string, CoverageMap> coverage;  // by project
  KillMatrix matrix;
};

std::vector<Mutant> MutateCorpus(const std::vector<Project>& projects);
GroundTruth BuildGroundTruth(const std::vector<Project>& projects,
                             std::vector<Mutant> mutants, uint64_t budget,
                             int jobs);

// Vocabulary over the token streams of every covering pair.
Vocabulary BuildCorpusVocabulary(const std::vector<Project>& projects,
                                 const std::vector<Mutant>& mutants,
                                 const KillMatrix& matrix, size_t max_size,
                                 const TokenizerOptions& tokenizer = {});

// One example per covering pair (two for no-diff), labelled from `matrix`,
// ordered by (mutant, test, variant).
std::vector<EncodedExample> EncodeCorpus(const std::vector<Project>& projects,
                                         const std::vector<Mutant>& mutants,
                                         const KillMatrix& matrix,
                                         const Vocabulary& vocab,
                                         Representation repr,
                                         const EncoderOptions& options = {});

// JSON lines; the first line is {"@lineage": {...}} when lineage is set.
struct JsonlFile {
  nlohmann::json lineage;
  std::vector<nlohmann::json> records;
};
void WriteJsonl(const fs::path& path, const nlohmann::json& lineage,
                const std::vector<nlohmann::json>& records);
JsonlFile ReadJsonl(const fs::path& path);
nlohmann::json ReadJson(const fs::path& path);
void WriteJson(const fs::path& path, const nlohmann::json& j);

std::vector<Mutant> ReadMutants(const fs::path& path);
KillMatrix ReadKillMatrix(const fs::path& path);
std::vector<EncodedExample> ReadExamples(const fs::path& path,
                                         nlohmann::json* lineage = nullptr);
PredictionMatrix ReadPredictions(const fs::path& path,
                                 nlohmann::json* lineage = nullptr);

// "key = value" lines; '#' starts a comment.
std::map<std::string, std::string> ParseKeyValue(const std::string& text);
// Applies recognized keys; throws ConfigError on unknown keys or bad values.
void ApplySettings(const std::map<std::string, std::string>& settings,
                   TrainConfig* train, ClassifierConfig* model);

// Work-directory steps. Each reads its inputs from `work` by conventional
// file name and writes its outputs there.
void RunMutate(const fs::path& corpus, const fs::path& work);
void RunMatrix(const fs::path& corpus, const fs::path& work, uint64_t budget,
               int jobs);

struct EncodeSettings {
  Representation repr = Representation::kTokenDiff;
  size_t window = kDefaultWindow;
  size_t vocab_size = kDefaultVocabSize;
  std::optional<fs::path> vocab;  // reuse instead of building
};
void RunEncode(const fs::path& corpus, const fs::path& work,
               const EncodeSettings& settings);

void RunSplit(const fs::path& work, const SplitSpec& spec, uint64_t seed);

TrainingLog RunTrain(const fs::path& work, const TrainConfig& train,
                     ClassifierConfig model,
                     const fs::path& checkpoint_out = {});

void RunPredict(const fs::path& work, const fs::path& checkpoint,
                SplitPart part, int jobs);

// Scores predictions of `part` against the matrix and writes report.json,
// report.md and CSVs. Refuses predictions whose lineage does not match the
// work directory. Subtraction mode picks its threshold on the validation
// predictions.
MetricsReport RunEvaluate(const fs::path& work, ReportOptions options,
                          SplitPart part = SplitPart::kTest);

}  // namespace pmt

#endif  // PMT_PIPELINE_H_
