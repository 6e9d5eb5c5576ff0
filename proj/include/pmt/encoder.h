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

#ifndef PMT_ENCODER_H_
#define PMT_ENCODER_H_

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "pmt/ast.h"
#include "pmt/mutation.h"
#include "pmt/tokenizer.h"
#include "pmt/vocabulary.h"

namespace pmt {

enum class Representation { kTokenDiff, kLineDiff, kNoDiff };

std::string_view RepresentationName(Representation repr);
// Accepts both "token_diff" and "token-diff" spellings.
std::optional<Representation> RepresentationFromName(std::string_view name);

inline constexpr size_t kDefaultWindow = 256;
inline constexpr size_t kMaxWindow = 1024;

// Inputs of the name/line feature model. Token groups are vocabulary ids.
struct FeatureInputs {
  std::vector<int> method_name;
  std::vector<int> test_name;
  std::vector<int> line_before;
  std::vector<int> line_after;
  int operator_kind = 0;
  int sub_operator = 0;

  friend bool operator==(const FeatureInputs&, const FeatureInputs&) = default;
};

struct EncodedExample {
  std::vector<int> ids;
  std::optional<bool> label;  // true = detected
  bool truncated = false;
  std::string mutant_id;
  std::string test_id;
  Representation representation = Representation::kTokenDiff;
  // For no-diff pairs: "original" or "mutated". Empty otherwise.
  std::string variant;
  FeatureInputs features;

  friend bool operator==(const EncodedExample&, const EncodedExample&) = default;
};

// Source of the function enclosing a mutant, with its byte offset in the file
// the mutant's span refers to.
struct MethodSource {
  std::string_view text;
  size_t offset = 0;
};

struct TestSource {
  std::string_view text;
  std::string id;
  std::string name;
};

MethodSource MethodSourceOf(const Program& program, const FunctionDef& fn);
TestSource TestSourceOf(const Program& program, const TestDef& test,
                        std::string id);

class EncodingError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct EncoderOptions {
  size_t window = kDefaultWindow;
  TokenizerOptions tokenizer;
};

// <CLS> method-with-inline-diff <SEP> test, truncated to the window prefix.
EncodedExample EncodeTokenDiff(const MethodSource& method, const Mutant& mutant,
                               const TestSource& test, const Vocabulary& vocab,
                               const EncoderOptions& options = {});

// As EncodeTokenDiff, but <BEFORE>/<AFTER> wrap the whole affected lines.
EncodedExample EncodeLineDiff(const MethodSource& method, const Mutant& mutant,
                              const TestSource& test, const Vocabulary& vocab,
                              const EncoderOptions& options = {});

// (unmutated, mutated), each <CLS> code <SEP> test with no markers. The
// unmutated example is labelled undetected.
std::pair<EncodedExample, EncodedExample> EncodeNoDiff(
    const MethodSource& method, const Mutant& mutant, const TestSource& test,
    const Vocabulary& vocab, const EncoderOptions& options = {});

// Text of the method with the mutant applied (span relative to the file).
std::string MutatedMethodText(const MethodSource& method, const Mutant& mutant);

// Token streams every encoding is built from; used to build vocabularies.
std::vector<std::vector<std::string>> EncodingTokenStreams(
    const MethodSource& method, const Mutant& mutant, const TestSource& test,
    const TokenizerOptions& tokenizer = {});

bool MatchesMarkerGrammar(const std::vector<int>& ids);

struct DecodedDiff {
  std::vector<std::string> original_method;
  std::vector<std::string> mutated_method;
  std::vector<std::string> test;
};

// Splits a token-diff or line-diff example back into the original and mutated
// method token streams. Throws EncodingError if the marker grammar fails.
DecodedDiff DecodeDiff(const EncodedExample& example, const Vocabulary& vocab);

// Space-joined token text of an example.
std::string DecodeText(const EncodedExample& example, const Vocabulary& vocab);

nlohmann::json ExampleToJson(const EncodedExample& example);
EncodedExample ExampleFromJson(const nlohmann::json& j);

}  // namespace pmt

#endif  // PMT_ENCODER_H_
