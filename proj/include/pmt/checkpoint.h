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

#ifndef PMT_CHECKPOINT_H_
#define PMT_CHECKPOINT_H_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "pmt/classifier.h"

namespace pmt {

inline constexpr char kCheckpointMagic[8] = {'P', 'M', 'T', 'C',
                                             'K', 'P', 'T', '1'};
inline constexpr uint32_t kCheckpointVersion = 1;

class CheckpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class VersionError : public CheckpointError {
 public:
  using CheckpointError::CheckpointError;
};
class DimensionError : public CheckpointError {
 public:
  using CheckpointError::CheckpointError;
};

struct Checkpoint {
  std::unique_ptr<Model> model;
  std::string vocab_hash;
  nlohmann::json lineage;  // null when absent
};

// Layout: magic, u32 version, u32 header length, JSON header (config,
// vocab_size, vocab_hash, lineage), u32 tensor count, then per tensor
// u32 name length, name, u32 rows, u32 cols, rows*cols float32. All
// integers and floats are little-endian.
std::string SerializeCheckpoint(const Model& model,
                                const std::string& vocab_hash,
                                const nlohmann::json& lineage = nullptr);
Checkpoint DeserializeCheckpoint(std::string_view bytes);

void SaveCheckpoint(const std::filesystem::path& path, const Model& model,
                    const std::string& vocab_hash,
                    const nlohmann::json& lineage = nullptr);
// With `expected_vocab_size` set, a differing vocabulary size is a
// DimensionError.
Checkpoint LoadCheckpoint(const std::filesystem::path& path,
                          std::optional<size_t> expected_vocab_size = {});

}  // namespace pmt

#endif  // PMT_CHECKPOINT_H_
