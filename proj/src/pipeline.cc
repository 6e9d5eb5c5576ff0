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

#include "pmt/pipeline.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "pmt/checkpoint.h"
#include "pmt/hash.h"

namespace pmt {

namespace {

using json = nlohmann::json;

fs::path In(const fs::path& work, const std::string& name) {
  fs::path p = work / name;
  if (!fs::exists(p)) {
    throw DataError("missing " + p.string() + " (run the earlier step first)");
  }
  return p;
}

const Project& FindProject(const std::vector<Project>& projects,
                           const std::string& name) {
  for (const auto& p : projects) {
    if (p.name == name) return p;
  }
  throw DataError("mutant refers to unknown project '" + name + "'");
}

std::map<std::string, const Mutant*> IndexMutants(
    const std::vector<Mutant>& mutants) {
  std::map<std::string, const Mutant*> index;
  for (const auto& m : mutants) index[m.id] = &m;
  return index;
}

// Calls fn(method, mutant, test, entry) for every covering pair.
template <typename Fn>
void ForEachPair(const std::vector<Project>& projects,
                 const std::vector<Mutant>& mutants, const KillMatrix& matrix,
                 Fn&& fn) {
  auto index = IndexMutants(mutants);
  for (const auto& entry : matrix.entries()) {
    auto it = index.find(entry.mutant_id);
    if (it == index.end()) {
      throw DataError("matrix refers to unknown mutant " + entry.mutant_id);
    }
    const Mutant& m = *it->second;
    const Project& project = FindProject(projects, m.project);
    const FunctionDef* fn_def = project.program.FindFunction(m.function);
    const TestDef* test_def =
        project.program.FindTest(TestNameFromId(entry.test_id));
    if (fn_def == nullptr || test_def == nullptr) {
      throw DataError("pair (" + entry.mutant_id + ", " + entry.test_id +
                      ") does not match project " + project.name);
    }
    fn(MethodSourceOf(project.program, *fn_def), m,
       TestSourceOf(project.program, *test_def, entry.test_id), entry);
  }
}

std::string ReadText(const fs::path& path) {
  try {
    return ReadFile(path);
  } catch (const std::exception& e) {
    throw DataError(e.what());
  }
}

json LineageOf(const JsonlFile& file, const fs::path& path) {
  if (file.lineage.is_null()) {
    throw DataError(path.string() + " carries no lineage header");
  }
  return file.lineage;
}

}  // namespace

std::string SplitFile(SplitPart part) {
  return std::string(SplitPartName(part)) + ".jsonl";
}

std::string PredictionsFile(SplitPart part) {
  if (part == SplitPart::kTest) return "predictions.jsonl";
  return "predictions." + std::string(SplitPartName(part)) + ".jsonl";
}

Project LoadProject(const fs::path& path) {
  std::string source = ReadText(path);
  Project p{path.stem().string(), path, HashHex(source), Program()};
  try {
    p.program = Parse(std::move(source));
  } catch (const std::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  }
  return p;
}

std::vector<Project> LoadCorpus(const fs::path& path) {
  std::vector<fs::path> files;
  if (fs::is_directory(path)) {
    for (const auto& entry : fs::directory_iterator(path)) {
      if (entry.is_regular_file() && entry.path().extension() == ".mini") {
        files.push_back(entry.path());
      }
    }
    std::sort(files.begin(), files.end());
  } else if (fs::exists(path)) {
    files.push_back(path);
  }
  if (files.empty()) {
    throw DataError("no MiniLang sources found at " + path.string());
  }
  std::vector<Project> projects;
  for (const auto& f : files) {
    projects.push_back(LoadProject(f));
    for (size_t i = 0; i + 1 < projects.size(); ++i) {
      if (projects[i].name == projects.back().name) {
        throw DataError("duplicate project name " + projects.back().name);
      }
    }
  }
  return projects;
}

std::string CorpusHash(const std::vector<Project>& projects) {
  Fnv1a h;
  for (const auto& p : projects) h.Field(p.name).Field(p.source_hash);
  return h.hex();
}

std::vector<Mutant> MutateCorpus(const std::vector<Project>& projects) {
  std::vector<Mutant> all;
  for (const auto& p : projects) {
    auto mutants = GenerateMutants(p.program, p.name);
    all.insert(all.end(), mutants.begin(), mutants.end());
  }
  return all;
}

GroundTruth BuildGroundTruth(const std::vector<Project>& projects,
                             std::vector<Mutant> mutants, uint64_t budget,
                             int jobs) {
  GroundTruth gt;
  std::vector<KillMatrix> parts;
  for (const auto& p : projects) {
    CoverageMap coverage = BuildCoverage(p.program, budget, p.name);
    std::vector<Mutant> mine;
    for (const auto& m : mutants) {
      if (m.project == p.name) mine.push_back(m);
    }
    parts.push_back(BuildKillMatrix(p.program, mine, coverage, budget, jobs));
    gt.coverage[p.name] = std::move(coverage);
  }
  gt.mutants = std::move(mutants);
  gt.matrix = KillMatrix::Merge(parts);
  return gt;
}

Vocabulary BuildCorpusVocabulary(const std::vector<Project>& projects,
                                 const std::vector<Mutant>& mutants,
                                 const KillMatrix& matrix, size_t max_size,
                                 const TokenizerOptions& tokenizer) {
  std::vector<std::vector<std::string>> streams;
  ForEachPair(projects, mutants, matrix,
              [&](const MethodSource& method, const Mutant& m,
                  const TestSource& test, const KillEntry&) {
                for (auto& s : EncodingTokenStreams(method, m, test, tokenizer)) {
                  streams.push_back(std::move(s));
                }
              });
  return Vocabulary::Build(streams, max_size);
}

std::vector<EncodedExample> EncodeCorpus(const std::vector<Project>& projects,
                                         const std::vector<Mutant>& mutants,
                                         const KillMatrix& matrix,
                                         const Vocabulary& vocab,
                                         Representation repr,
                                         const EncoderOptions& options) {
  std::vector<EncodedExample> out;
  ForEachPair(projects, mutants, matrix,
              [&](const MethodSource& method, const Mutant& m,
                  const TestSource& test, const KillEntry& entry) {
                switch (repr) {
                  case Representation::kTokenDiff:
                    out.push_back(EncodeTokenDiff(method, m, test, vocab, options));
                    out.back().label = entry.detected;
                    break;
                  case Representation::kLineDiff:
                    out.push_back(EncodeLineDiff(method, m, test, vocab, options));
                    out.back().label = entry.detected;
                    break;
                  case Representation::kNoDiff: {
                    auto [original, mutated] =
                        EncodeNoDiff(method, m, test, vocab, options);
                    original.label = false;
                    mutated.label = entry.detected;
                    out.push_back(std::move(original));
                    out.push_back(std::move(mutated));
                    break;
                  }
                }
              });
  return out;
}

void WriteJsonl(const fs::path& path, const json& lineage,
                const std::vector<json>& records) {
  std::string out;
  if (!lineage.is_null()) out += json{{kLineageKey, lineage}}.dump() + "\n";
  for (const auto& r : records) out += r.dump() + "\n";
  WriteFile(path, out);
}

JsonlFile ReadJsonl(const fs::path& path) {
  std::istringstream in(ReadText(path));
  JsonlFile file;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": " +
                      e.what());
    }
    if (file.records.empty() && file.lineage.is_null() && j.is_object() &&
        j.size() == 1 && j.contains(kLineageKey)) {
      file.lineage = j[kLineageKey];
      continue;
    }
    file.records.push_back(std::move(j));
  }
  return file;
}

json ReadJson(const fs::path& path) {
  try {
    return json::parse(ReadText(path));
  } catch (const json::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

void WriteJson(const fs::path& path, const json& j) {
  WriteFile(path, j.dump(2) + "\n");
}

namespace {

template <typename T, typename Fn>
std::vector<T> ParseRecords(const fs::path& path, const JsonlFile& file,
                            Fn&& parse) {
  std::vector<T> out;
  out.reserve(file.records.size());
  for (const auto& r : file.records) {
    try {
      out.push_back(parse(r));
    } catch (const std::exception& e) {
      throw DataError(path.string() + ": bad record: " + e.what());
    }
  }
  return out;
}

}  // namespace

std::vector<Mutant> ReadMutants(const fs::path& path) {
  return ParseRecords<Mutant>(path, ReadJsonl(path), MutantFromJson);
}

KillMatrix ReadKillMatrix(const fs::path& path) {
  auto entries =
      ParseRecords<KillEntry>(path, ReadJsonl(path), KillEntryFromJson);
  try {
    return KillMatrix(std::move(entries));
  } catch (const std::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

std::vector<EncodedExample> ReadExamples(const fs::path& path, json* lineage) {
  JsonlFile file = ReadJsonl(path);
  if (lineage != nullptr) *lineage = file.lineage;
  return ParseRecords<EncodedExample>(path, file, ExampleFromJson);
}

PredictionMatrix ReadPredictions(const fs::path& path, json* lineage) {
  JsonlFile file = ReadJsonl(path);
  if (lineage != nullptr) *lineage = file.lineage;
  auto entries =
      ParseRecords<PredictionEntry>(path, file, PredictionFromJson);
  try {
    return PredictionMatrix(std::move(entries));
  } catch (const std::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

std::map<std::string, std::string> ParseKeyValue(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  auto trim = [](std::string s) {
    size_t b = s.find_first_not_of(" \t\r");
    size_t e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected key = value");
    }
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

void ApplySettings(const std::map<std::string, std::string>& settings,
                   TrainConfig* train, ClassifierConfig* model) {
  for (const auto& [key, value] : settings) {
    try {
      if (key == "model") {
        auto kind = ModelKindFromName(value);
        if (!kind) throw ConfigError("unknown model '" + value + "'");
        model->kind = *kind;
      } else if (key == "layers") {
        model->layers = std::stoi(value);
      } else if (key == "heads") {
        model->heads = std::stoi(value);
      } else if (key == "embed_dim") {
        model->embed_dim = std::stoi(value);
      } else if (key == "ff_dim") {
        model->ff_dim = std::stoi(value);
      } else if (key == "dropout") {
        model->dropout = std::stod(value);
      } else if (key == "model_seed") {
        model->seed = std::stoull(value);
      } else if (key == "epochs") {
        train->epochs = std::stoi(value);
      } else if (key == "batch_size") {
        train->batch_size = std::stoul(value);
      } else if (key == "learning_rate") {
        train->peak_learning_rate = std::stod(value);
      } else if (key == "warmup_steps") {
        train->warmup_steps = std::stoul(value);
      } else if (key == "grad_clip") {
        train->grad_clip_norm = std::stod(value);
      } else if (key == "seed") {
        train->seed = std::stoull(value);
        model->seed = train->seed;
      } else if (key == "class_weights") {
        size_t comma = value.find(',');
        if (comma == std::string::npos) {
          throw ConfigError("class_weights needs two comma-separated values");
        }
        train->class_weights = std::make_pair(
            std::stod(value.substr(0, comma)), std::stod(value.substr(comma + 1)));
      } else {
        throw ConfigError("unknown config key '" + key + "'");
      }
    } catch (const std::logic_error& e) {
      if (dynamic_cast<const ConfigError*>(&e)) throw;
      throw ConfigError("bad value for '" + key + "': " + value);
    }
  }
}

void RunMutate(const fs::path& corpus, const fs::path& work) {
  auto projects = LoadCorpus(corpus);
  fs::create_directories(work);
  std::vector<json> records;
  for (const auto& m : MutateCorpus(projects)) records.push_back(MutantToJson(m));
  WriteJsonl(work / kMutantsFile, {{"corpus", CorpusHash(projects)}}, records);
}

void RunMatrix(const fs::path& corpus, const fs::path& work, uint64_t budget,
               int jobs) {
  auto projects = LoadCorpus(corpus);
  fs::path mutants_path = In(work, kMutantsFile);
  JsonlFile mutants_file = ReadJsonl(mutants_path);
  if (LineageOf(mutants_file, mutants_path).value("corpus", "") !=
      CorpusHash(projects)) {
    throw DataError(mutants_path.string() +
                    " was generated from a different corpus");
  }
  auto mutants = ReadMutants(mutants_path);
  GroundTruth gt = BuildGroundTruth(projects, std::move(mutants), budget, jobs);
  json lineage{{"corpus", CorpusHash(projects)},
               {"mutants", HashFile(mutants_path)},
               {"budget", budget}};
  json coverage = json::object();
  coverage[kLineageKey] = lineage;
  for (const auto& [name, cov] : gt.coverage) coverage[name] = CoverageToJson(cov);
  WriteJson(work / kCoverageFile, coverage);
  std::vector<json> records;
  for (const auto& e : gt.matrix.entries()) records.push_back(KillEntryToJson(e));
  WriteJsonl(work / kMatrixFile, lineage, records);
}

void RunEncode(const fs::path& corpus, const fs::path& work,
               const EncodeSettings& settings) {
  auto projects = LoadCorpus(corpus);
  fs::path matrix_path = In(work, kMatrixFile);
  auto mutants = ReadMutants(In(work, kMutantsFile));
  KillMatrix matrix = ReadKillMatrix(matrix_path);
  EncoderOptions options;
  options.window = settings.window;
  Vocabulary vocab;
  if (settings.vocab) {
    try {
      vocab = Vocabulary::FromJson(ReadJson(*settings.vocab));
    } catch (const DataError&) {
      throw;
    } catch (const std::exception& e) {
      throw DataError(settings.vocab->string() + ": " + e.what());
    }
  } else {
    vocab = BuildCorpusVocabulary(projects, mutants, matrix, settings.vocab_size,
                                  options.tokenizer);
  }
  auto examples =
      EncodeCorpus(projects, mutants, matrix, vocab, settings.repr, options);

  json vocab_json = vocab.ToJson();
  vocab_json[kLineageKey] = {{"corpus", CorpusHash(projects)}};
  WriteJson(work / kVocabFile, vocab_json);
  std::vector<json> records;
  for (const auto& ex : examples) records.push_back(ExampleToJson(ex));
  WriteJsonl(work / kDatasetFile,
             {{"corpus", CorpusHash(projects)},
              {"matrix", HashFile(matrix_path)},
              {"vocab", vocab.Hash()},
              {"representation", RepresentationName(settings.repr)},
              {"window", settings.window}},
             records);
}

void RunSplit(const fs::path& work, const SplitSpec& spec, uint64_t seed) {
  fs::path dataset_path = In(work, kDatasetFile);
  JsonlFile dataset = ReadJsonl(dataset_path);
  json lineage = LineageOf(dataset, dataset_path);
  auto examples = ReadExamples(dataset_path);
  auto mutants = ReadMutants(In(work, kMutantsFile));
  // Only mutants that reached the dataset (covered ones) are split.
  std::set<std::string> present;
  for (const auto& ex : examples) present.insert(ex.mutant_id);
  std::vector<Mutant> units;
  for (const auto& m : mutants) {
    if (present.count(m.id)) units.push_back(m);
  }
  SplitResult split = SplitMutants(units, spec, seed);
  auto parts = PartitionExamples(examples, split);
  lineage["dataset"] = HashFile(dataset_path);
  lineage["split_mode"] = SplitModeName(spec.mode);
  lineage["seed"] = seed;
  for (SplitPart p : {SplitPart::kTrain, SplitPart::kVal, SplitPart::kTest}) {
    json part_lineage = lineage;
    part_lineage["part"] = SplitPartName(p);
    std::vector<json> records;
    for (const auto& ex : parts[static_cast<size_t>(p)]) {
      records.push_back(ExampleToJson(ex));
    }
    WriteJsonl(work / SplitFile(p), part_lineage, records);
  }
}

TrainingLog RunTrain(const fs::path& work, const TrainConfig& train,
                     ClassifierConfig model, const fs::path& checkpoint_out) {
  json train_lineage, val_lineage;
  fs::path train_path = In(work, SplitFile(SplitPart::kTrain));
  fs::path val_path = In(work, SplitFile(SplitPart::kVal));
  auto train_set = ReadExamples(train_path, &train_lineage);
  auto val_set = ReadExamples(val_path, &val_lineage);
  if (train_lineage.is_null() || val_lineage.is_null() ||
      train_lineage.value("dataset", "") != val_lineage.value("dataset", "")) {
    throw DataError("train and validation splits come from different datasets");
  }
  Vocabulary vocab = Vocabulary::FromJson(ReadJson(In(work, kVocabFile)));
  if (vocab.Hash() != train_lineage.value("vocab", "")) {
    throw DataError("vocab.json does not match the dataset vocabulary");
  }
  model.window = train_lineage.value("window", model.window);
  TrainResult result =
      Train(train_set, val_set, train, model, vocab.size());
  json lineage{{"train", HashFile(train_path)},
               {"val", HashFile(val_path)},
               {"matrix", train_lineage.value("matrix", "")},
               {"representation", train_lineage.value("representation", "")}};
  fs::path out = checkpoint_out.empty() ? work / kModelFile : checkpoint_out;
  SaveCheckpoint(out, *result.model, vocab.Hash(), lineage);
  json log = result.log.ToJson();
  log["train_config"] = train.ToJson();
  log["model_config"] = result.model->config().ToJson();
  log[kLineageKey] = lineage;
  WriteJson(work / kTrainingLogFile, log);
  return result.log;
}

void RunPredict(const fs::path& work, const fs::path& checkpoint,
                SplitPart part, int jobs) {
  json lineage;
  fs::path data_path = In(work, SplitFile(part));
  auto examples = ReadExamples(data_path, &lineage);
  if (lineage.is_null()) throw DataError(data_path.string() + " has no lineage");
  Checkpoint ck;
  try {
    ck = LoadCheckpoint(checkpoint);
  } catch (const CheckpointError& e) {
    throw DataError(checkpoint.string() + ": " + e.what());
  }
  if (ck.vocab_hash != lineage.value("vocab", "")) {
    throw DataError("checkpoint vocabulary " + ck.vocab_hash +
                    " does not match dataset vocabulary " +
                    lineage.value("vocab", std::string()));
  }
  PredictionMatrix pred = PredictMatrix(*ck.model, examples, jobs);
  std::vector<json> records;
  for (const auto& e : pred.entries()) records.push_back(PredictionToJson(e));
  WriteJsonl(work / PredictionsFile(part),
             {{"dataset", HashFile(data_path)},
              {"matrix", lineage.value("matrix", "")},
              {"checkpoint", HashFile(checkpoint)},
              {"part", SplitPartName(part)}},
             records);
}

namespace {

std::pair<PredictionMatrix, KillMatrix> LoadScoredPart(const fs::path& work,
                                                       const KillMatrix& all,
                                                       const std::string& matrix_hash,
                                                       SplitPart part) {
  json lineage;
  fs::path pred_path = In(work, PredictionsFile(part));
  PredictionMatrix pred = ReadPredictions(pred_path, &lineage);
  if (lineage.is_null() || lineage.value("matrix", "") != matrix_hash) {
    throw DataError(pred_path.string() +
                    " was not produced from this work directory's matrix");
  }
  fs::path data_path = work / SplitFile(part);
  if (!fs::exists(data_path) ||
      lineage.value("dataset", "") != HashFile(data_path)) {
    throw DataError(pred_path.string() + " does not match " +
                    data_path.string());
  }
  KillMatrix truth = all.Subset(pred.MutantIds());
  return {std::move(pred), std::move(truth)};
}

}  // namespace

MetricsReport RunEvaluate(const fs::path& work, ReportOptions options,
                          SplitPart part) {
  fs::path matrix_path = In(work, kMatrixFile);
  const std::string matrix_hash = HashFile(matrix_path);
  KillMatrix all = ReadKillMatrix(matrix_path);
  auto [pred, truth] = LoadScoredPart(work, all, matrix_hash, part);
  if (options.subtraction) {
    auto [val_pred, val_truth] =
        LoadScoredPart(work, all, matrix_hash, SplitPart::kVal);
    options.threshold = SelectSubtractionThreshold(val_pred, val_truth);
  }
  MetricsReport report;
  try {
    report = BuildReport(pred, truth, options);
  } catch (const std::invalid_argument& e) {
    throw DataError(e.what());
  }
  json j = ReportToJson(report);
  j[kLineageKey] = {{"predictions", HashFile(work / PredictionsFile(part))},
                    {"matrix", matrix_hash}};
  WriteJson(work / kReportJsonFile, j);
  WriteFile(work / kReportMdFile, ReportToMarkdown(report));
  WriteFile(work / kBucketsCsvFile, BucketsToCsv(report.buckets));
  if (report.sweep) WriteFile(work / kSweepCsvFile, SweepToCsv(*report.sweep));
  return report;
}

}  // namespace pmt
