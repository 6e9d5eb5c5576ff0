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

#ifndef PMT_SPLIT_H_
#define PMT_SPLIT_H_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pmt/encoder.h"
#include "pmt/mutation.h"

namespace pmt {

enum class SplitMode { kSameProject, kCrossProject };
enum class SplitPart { kTrain = 0, kVal = 1, kTest = 2 };

std::string_view SplitModeName(SplitMode mode);
std::optional<SplitMode> SplitModeFromName(std::string_view name);
std::string_view SplitPartName(SplitPart part);
std::optional<SplitPart> SplitPartFromName(std::string_view name);

class SplitError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SplitSpec {
  SplitMode mode = SplitMode::kSameProject;
  std::array<double, 3> ratios = {0.8, 0.1, 0.1};
  // Cross-project only. When empty, projects are shuffled and cut by ratio.
  std::map<std::string, SplitPart> assignment;

  void Validate() const;
};

struct SplitResult {
  std::array<std::vector<std::string>, 3> mutant_ids;  // sorted per part
  std::map<std::string, SplitPart> part_of;

  const std::vector<std::string>& ids(SplitPart p) const {
    return mutant_ids[static_cast<size_t>(p)];
  }
};

// Unit sizes for n units: round(n * r_train), round(n * r_val), rest.
std::array<size_t, 3> CutSizes(size_t n, const std::array<double, 3>& ratios);

// Assigns whole mutants (same_project) or whole projects (cross_project)
// to parts after a seeded shuffle of the sorted units.
SplitResult SplitMutants(const std::vector<Mutant>& mutants,
                         const SplitSpec& spec, uint64_t seed);

// Partitions examples by their mutant's part. Relative order is kept.
std::array<std::vector<EncodedExample>, 3> PartitionExamples(
    const std::vector<EncodedExample>& examples, const SplitResult& split);

}  // namespace pmt

#endif  // PMT_SPLIT_H_
