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

#ifndef PMT_MUTATION_H_
#define PMT_MUTATION_H_

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "pmt/ast.h"

namespace pmt {

// The operator classes the engine knows. Major's full operator set is larger;
// these six cover relational, arithmetic and logical replacement plus the
// three conditional rewrites.
enum class MutantOperatorKind {
  kROR,        // relational operator replacement
  kAOR,        // arithmetic operator replacement
  kLOR,        // && <-> ||
  kCondNeg,    // if (c) -> if (!(c))
  kCondTrue,   // if (c) -> if (true)
  kCondFalse,  // if (c) -> if (false)
};

inline constexpr int kOperatorKindCount = 6;
// Replacement symbols for binary operators, plus one "none" slot used by the
// conditional kinds.
inline constexpr int kSubOperatorCount = 14;

std::string_view OperatorKindName(MutantOperatorKind kind);
std::optional<MutantOperatorKind> OperatorKindFromName(std::string_view name);

struct Mutant {
  std::string id;
  std::string project;
  MutantOperatorKind op = MutantOperatorKind::kROR;
  // Replacement symbol for ROR/AOR/LOR, empty for conditional kinds.
  std::string sub_operator;
  std::string function;
  int line = 0;
  SourceSpan span;
  std::vector<std::string> before_tokens;
  std::vector<std::string> after_tokens;
  // Exact source bytes of the span, and the bytes that replace them.
  std::string before_text;
  std::string after_text;

  // Index into the one-hot sub-operator block, in [0, kSubOperatorCount).
  int sub_operator_id() const;

  friend bool operator==(const Mutant&, const Mutant&) = default;
};

// Content hash over every field except `id`.
std::string ComputeMutantId(const Mutant& mutant);

// Every first-order mutant of the non-test functions of `program`, ordered by
// line, then span, then operator.
std::vector<Mutant> GenerateMutants(const Program& program,
                                    std::string_view project = "");

class StaleMutantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string ApplyMutant(std::string_view source, const Mutant& mutant);
// Inverse of ApplyMutant on its output.
std::string RevertMutant(std::string_view mutated_source, const Mutant& mutant);

nlohmann::json MutantToJson(const Mutant& mutant);
Mutant MutantFromJson(const nlohmann::json& j);

}  // namespace pmt

#endif  // PMT_MUTATION_H_
