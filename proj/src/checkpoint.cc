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

#include "pmt/checkpoint.h"

#include <bit>
#include <cstring>

#include "pmt/hash.h"

namespace pmt {

namespace {

static_assert(std::endian::native == std::endian::little,
              "checkpoint I/O assumes a little-endian host");

void PutU32(std::string& out, uint32_t v) {
  char b[4];
  std::memcpy(b, &v, 4);
  out.append(b, 4);
}

class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  std::string_view Take(size_t n) {
    if (bytes_.size() - pos_ < n) throw CheckpointError("checkpoint truncated");
    std::string_view s = bytes_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  uint32_t U32() {
    uint32_t v;
    std::memcpy(&v, Take(4).data(), 4);
    return v;
  }
  bool done() const { return pos_ == bytes_.size(); }

 private:
  std::string_view bytes_;
  size_t pos_ = 0;
};

}  // namespace

std::string SerializeCheckpoint(const Model& model,
                                const std::string& vocab_hash,
                                const nlohmann::json& lineage) {
  std::string out(kCheckpointMagic, sizeof(kCheckpointMagic));
  PutU32(out, kCheckpointVersion);
  nlohmann::json header{{"config", model.config().ToJson()},
                        {"vocab_size", model.vocab_size()},
                        {"vocab_hash", vocab_hash}};
  if (!lineage.is_null()) header[kLineageKey] = lineage;
  std::string header_text = header.dump();
  PutU32(out, static_cast<uint32_t>(header_text.size()));
  out += header_text;
  const auto& params = model.parameters();
  PutU32(out, static_cast<uint32_t>(params.size()));
  for (const auto& p : params) {
    PutU32(out, static_cast<uint32_t>(p.name.size()));
    out += p.name;
    PutU32(out, static_cast<uint32_t>(p.value.rows()));
    PutU32(out, static_cast<uint32_t>(p.value.cols()));
    out.append(reinterpret_cast<const char*>(p.value.data()),
               sizeof(float) * static_cast<size_t>(p.value.size()));
  }
  return out;
}

Checkpoint DeserializeCheckpoint(std::string_view bytes) {
  Reader in(bytes);
  if (in.Take(sizeof(kCheckpointMagic)) !=
      std::string_view(kCheckpointMagic, sizeof(kCheckpointMagic))) {
    throw CheckpointError("not a checkpoint file (bad magic)");
  }
  uint32_t version = in.U32();
  if (version != kCheckpointVersion) {
    throw VersionError("unsupported checkpoint version " +
                       std::to_string(version) + " (expected " +
                       std::to_string(kCheckpointVersion) + ")");
  }
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(in.Take(in.U32()));
  } catch (const nlohmann::json::exception& e) {
    throw CheckpointError(std::string("bad checkpoint header: ") + e.what());
  }
  Checkpoint ck;
  ClassifierConfig config = ClassifierConfig::FromJson(header.at("config"));
  size_t vocab_size = header.at("vocab_size").get<size_t>();
  ck.vocab_hash = header.value("vocab_hash", "");
  if (header.contains(kLineageKey)) ck.lineage = header[kLineageKey];
  ck.model = MakeClassifier<float>(config, vocab_size);

  auto& params = ck.model->parameters();
  uint32_t count = in.U32();
  if (count != params.size()) {
    throw DimensionError("checkpoint holds " + std::to_string(count) +
                         " tensors, model expects " +
                         std::to_string(params.size()));
  }
  for (auto& p : params) {
    std::string_view name = in.Take(in.U32());
    uint32_t rows = in.U32();
    uint32_t cols = in.U32();
    if (name != p.name) {
      throw DimensionError("tensor " + std::string(name) + " where " + p.name +
                           " was expected");
    }
    if (rows != p.value.rows() || cols != p.value.cols()) {
      throw DimensionError("tensor " + p.name + " has shape " +
                           std::to_string(rows) + "x" + std::to_string(cols) +
                           ", expected " + std::to_string(p.value.rows()) +
                           "x" + std::to_string(p.value.cols()));
    }
    std::string_view data = in.Take(sizeof(float) * rows * cols);
    std::memcpy(p.value.data(), data.data(), data.size());
  }
  if (!in.done()) throw CheckpointError("trailing bytes after checkpoint");
  return ck;
}

void SaveCheckpoint(const std::filesystem::path& path, const Model& model,
                    const std::string& vocab_hash,
                    const nlohmann::json& lineage) {
  WriteFile(path, SerializeCheckpoint(model, vocab_hash, lineage));
}

Checkpoint LoadCheckpoint(const std::filesystem::path& path,
                          std::optional<size_t> expected_vocab_size) {
  Checkpoint ck = DeserializeCheckpoint(ReadFile(path));
  if (expected_vocab_size && *expected_vocab_size != ck.model->vocab_size()) {
    throw DimensionError("checkpoint vocabulary size " +
                         std::to_string(ck.model->vocab_size()) +
                         " does not match " +
                         std::to_string(*expected_vocab_size));
  }
  return ck;
}

}  // namespace pmt
