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

#ifndef PMT_GROUNDTRUTH_H_
#define PMT_GROUNDTRUTH_H_

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "pmt/ast.h"
#include "pmt/interpreter.h"
#include "pmt/mutation.h"

namespace pmt {

// Tests are identified as "<project>::<name>", or just "<name>" when the
// project is unnamed.
std::string QualifiedTestId(std::string_view project, std::string_view name);
std::string_view TestNameFromId(std::string_view test_id);

struct TestCoverage {
  std::vector<int> lines;  // sorted
  uint64_t cost_steps = 0;

  bool Covers(int line) const;
};

struct CoverageMap {
  std::vector<std::string> test_order;  // declaration order
  std::map<std::string, TestCoverage> tests;
};

class RedSuiteError : public std::runtime_error {
 public:
  explicit RedSuiteError(std::vector<std::string> failing);
  const std::vector<std::string>& failing_tests() const { return failing_; }

 private:
  std::vector<std::string> failing_;
};

// Runs every test on the unmutated program. Throws RedSuiteError listing the
// failing tests if any test does not pass.
CoverageMap BuildCoverage(const Program& program, uint64_t budget,
                          std::string_view project = "");

std::vector<std::string> CoveringTests(const Mutant& mutant,
                                       const CoverageMap& coverage);

struct KillEntry {
  std::string mutant_id;
  std::string test_id;
  bool detected = false;
  uint64_t cost_steps = 0;
  TestStatus status = TestStatus::kPass;

  friend bool operator==(const KillEntry&, const KillEntry&) = default;
};

// Ground-truth outcomes of covering (mutant, test) pairs, ordered by
// (mutant_id, test_id).
class KillMatrix {
 public:
  KillMatrix() = default;
  explicit KillMatrix(std::vector<KillEntry> entries);

  const std::vector<KillEntry>& entries() const { return entries_; }
  size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  const KillEntry* Find(std::string_view mutant_id,
                        std::string_view test_id) const;
  // Entries of one mutant (its row), empty when the mutant is uncovered.
  std::vector<const KillEntry*> Row(std::string_view mutant_id) const;
  std::vector<std::string> MutantIds() const;

  // Restricts to the given mutants.
  KillMatrix Subset(const std::vector<std::string>& mutant_ids) const;
  static KillMatrix Merge(const std::vector<KillMatrix>& parts);

 private:
  std::vector<KillEntry> entries_;
  std::map<std::string, std::pair<size_t, size_t>, std::less<>> rows_;
};

// Executes every covering pair against the mutated program. Mutants with no
// covering test are pruned. `jobs` worker threads share the mutant list; the
// result does not depend on `jobs`.
KillMatrix BuildKillMatrix(const Program& program,
                           const std::vector<Mutant>& mutants,
                           const CoverageMap& coverage, uint64_t budget,
                           int jobs = 1);

// Detected iff any covering entry is detected. Throws std::invalid_argument
// for a mutant with no covering entries.
bool TruthSuiteVerdict(const KillMatrix& matrix, std::string_view mutant_id);

nlohmann::json KillEntryToJson(const KillEntry& entry);
KillEntry KillEntryFromJson(const nlohmann::json& j);
nlohmann::json CoverageToJson(const CoverageMap& coverage);
CoverageMap CoverageFromJson(const nlohmann::json& j);

}  // namespace pmt

#endif  // PMT_GROUNDTRUTH_H_
