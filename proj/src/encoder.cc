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

#include "pmt/encoder.h"

#include <algorithm>

namespace pmt {

namespace {

SourceSpan RelativeSpan(const MethodSource& method, const Mutant& mutant) {
  SourceSpan method_span{method.offset, method.offset + method.text.size()};
  if (!method_span.Contains(mutant.span)) {
    throw EncodingError("mutant " + mutant.id +
                        " span lies outside the enclosing method");
  }
  return {mutant.span.begin - method.offset, mutant.span.end - method.offset};
}

struct SequenceBuilder {
  const Vocabulary& vocab;
  const EncoderOptions& options;
  std::vector<int> ids{Vocabulary::kCls};

  void Text(std::string_view text) {
    for (const auto& tok : Tokenize(text, options.tokenizer)) {
      ids.push_back(vocab.Id(tok));
    }
  }
  void Marker(int id) { ids.push_back(id); }

  void Finish(EncodedExample* ex) {
    if (options.window == 0 || options.window > kMaxWindow) {
      throw EncodingError("window must be in [1, " +
                          std::to_string(kMaxWindow) + "]");
    }
    ex->truncated = ids.size() > options.window;
    if (ex->truncated) ids.resize(options.window);
    ex->ids = std::move(ids);
  }
};

std::vector<int> TokenIds(std::string_view text, const Vocabulary& vocab,
                          const EncoderOptions& options) {
  return vocab.Ids(Tokenize(text, options.tokenizer));
}

// Byte range of the full lines (within the method text) touched by `rel`.
SourceSpan LineRange(std::string_view text, SourceSpan rel) {
  size_t begin = text.rfind('\n', rel.begin == 0 ? 0 : rel.begin - 1);
  begin = (begin == std::string_view::npos || rel.begin == 0) ? 0 : begin + 1;
  size_t end = text.find('\n', rel.end);
  if (end == std::string_view::npos) end = text.size();
  return {begin, end};
}

EncodedExample Skeleton(const Mutant& mutant, const TestSource& test,
                        Representation repr) {
  EncodedExample ex;
  ex.mutant_id = mutant.id;
  ex.test_id = test.id;
  ex.representation = repr;
  return ex;
}

FeatureInputs Features(const MethodSource& method, const Mutant& mutant,
                       const TestSource& test, const Vocabulary& vocab,
                       const EncoderOptions& options) {
  SourceSpan rel = RelativeSpan(method, mutant);
  SourceSpan lines = LineRange(method.text, rel);
  std::string_view text = method.text;
  std::string before(text.substr(lines.begin, lines.size()));
  std::string after = std::string(text.substr(lines.begin, rel.begin - lines.begin)) +
                      mutant.after_text +
                      std::string(text.substr(rel.end, lines.end - rel.end));
  FeatureInputs f;
  f.method_name = TokenIds(mutant.function, vocab, options);
  f.test_name = TokenIds(test.name, vocab, options);
  f.line_before = TokenIds(before, vocab, options);
  f.line_after = TokenIds(after, vocab, options);
  f.operator_kind = static_cast<int>(mutant.op);
  f.sub_operator = mutant.sub_operator_id();
  return f;
}

}  // namespace

std::string_view RepresentationName(Representation repr) {
  switch (repr) {
    case Representation::kTokenDiff: return "token_diff";
    case Representation::kLineDiff: return "line_diff";
    case Representation::kNoDiff: return "no_diff";
  }
  return "?";
}

std::optional<Representation> RepresentationFromName(std::string_view name) {
  std::string normalized(name);
  std::replace(normalized.begin(), normalized.end(), '-', '_');
  for (auto r : {Representation::kTokenDiff, Representation::kLineDiff,
                 Representation::kNoDiff}) {
    if (RepresentationName(r) == normalized) return r;
  }
  return std::nullopt;
}

MethodSource MethodSourceOf(const Program& program, const FunctionDef& fn) {
  std::string_view src = program.source_text();
  return {src.substr(fn.span.begin, fn.span.size()), fn.span.begin};
}

TestSource TestSourceOf(const Program& program, const TestDef& test,
                        std::string id) {
  std::string_view src = program.source_text();
  return {src.substr(test.span.begin, test.span.size()), std::move(id),
          test.name};
}

std::string MutatedMethodText(const MethodSource& method, const Mutant& mutant) {
  SourceSpan rel = RelativeSpan(method, mutant);
  std::string out(method.text.substr(0, rel.begin));
  out += mutant.after_text;
  out += method.text.substr(rel.end);
  return out;
}

EncodedExample EncodeTokenDiff(const MethodSource& method, const Mutant& mutant,
                               const TestSource& test, const Vocabulary& vocab,
                               const EncoderOptions& options) {
  SourceSpan rel = RelativeSpan(method, mutant);
  EncodedExample ex = Skeleton(mutant, test, Representation::kTokenDiff);
  SequenceBuilder b{vocab, options};
  b.Text(method.text.substr(0, rel.begin));
  b.Marker(Vocabulary::kBefore);
  b.Text(mutant.before_text);
  b.Marker(Vocabulary::kAfter);
  b.Text(mutant.after_text);
  b.Marker(Vocabulary::kEndDiff);
  b.Text(method.text.substr(rel.end));
  b.Marker(Vocabulary::kSep);
  b.Text(test.text);
  b.Finish(&ex);
  ex.features = Features(method, mutant, test, vocab, options);
  return ex;
}

EncodedExample EncodeLineDiff(const MethodSource& method, const Mutant& mutant,
                              const TestSource& test, const Vocabulary& vocab,
                              const EncoderOptions& options) {
  SourceSpan rel = RelativeSpan(method, mutant);
  SourceSpan lines = LineRange(method.text, rel);
  std::string_view text = method.text;
  EncodedExample ex = Skeleton(mutant, test, Representation::kLineDiff);
  SequenceBuilder b{vocab, options};
  b.Text(text.substr(0, lines.begin));
  b.Marker(Vocabulary::kBefore);
  b.Text(text.substr(lines.begin, lines.size()));
  b.Marker(Vocabulary::kAfter);
  b.Text(text.substr(lines.begin, rel.begin - lines.begin));
  b.Text(mutant.after_text);
  b.Text(text.substr(rel.end, lines.end - rel.end));
  b.Marker(Vocabulary::kEndDiff);
  b.Text(text.substr(lines.end));
  b.Marker(Vocabulary::kSep);
  b.Text(test.text);
  b.Finish(&ex);
  ex.features = Features(method, mutant, test, vocab, options);
  return ex;
}

std::pair<EncodedExample, EncodedExample> EncodeNoDiff(
    const MethodSource& method, const Mutant& mutant, const TestSource& test,
    const Vocabulary& vocab, const EncoderOptions& options) {
  FeatureInputs features = Features(method, mutant, test, vocab, options);

  EncodedExample original = Skeleton(mutant, test, Representation::kNoDiff);
  original.variant = "original";
  original.label = false;
  SequenceBuilder ob{vocab, options};
  ob.Text(method.text);
  ob.Marker(Vocabulary::kSep);
  ob.Text(test.text);
  ob.Finish(&original);
  original.features = features;

  EncodedExample mutated = Skeleton(mutant, test, Representation::kNoDiff);
  mutated.variant = "mutated";
  SequenceBuilder mb{vocab, options};
  mb.Text(MutatedMethodText(method, mutant));
  mb.Marker(Vocabulary::kSep);
  mb.Text(test.text);
  mb.Finish(&mutated);
  mutated.features = std::move(features);
  return {std::move(original), std::move(mutated)};
}

std::vector<std::vector<std::string>> EncodingTokenStreams(
    const MethodSource& method, const Mutant& mutant, const TestSource& test,
    const TokenizerOptions& tokenizer) {
  return {Tokenize(method.text, tokenizer),
          Tokenize(MutatedMethodText(method, mutant), tokenizer),
          Tokenize(test.text, tokenizer)};
}

bool MatchesMarkerGrammar(const std::vector<int>& ids) {
  if (ids.empty() || ids[0] != Vocabulary::kCls) return false;
  // Expected marker order after <CLS>.
  const int expected[] = {Vocabulary::kBefore, Vocabulary::kAfter,
                          Vocabulary::kEndDiff, Vocabulary::kSep};
  size_t next = 0;
  size_t last_marker = 0;
  for (size_t i = 1; i < ids.size(); ++i) {
    int id = ids[i];
    bool is_marker = id == Vocabulary::kCls || id == Vocabulary::kSep ||
                     id == Vocabulary::kBefore || id == Vocabulary::kAfter ||
                     id == Vocabulary::kEndDiff;
    if (!is_marker) continue;
    if (next >= 4 || id != expected[next]) return false;
    // <BEFORE> t+ <AFTER> t+ <ENDDIFF>
    if ((id == Vocabulary::kAfter || id == Vocabulary::kEndDiff) &&
        i == last_marker + 1) {
      return false;
    }
    last_marker = i;
    ++next;
  }
  return next == 4;
}

DecodedDiff DecodeDiff(const EncodedExample& example, const Vocabulary& vocab) {
  if (example.representation == Representation::kNoDiff ||
      !MatchesMarkerGrammar(example.ids)) {
    throw EncodingError("example " + example.mutant_id + "/" +
                        example.test_id + " has no well-formed diff markers");
  }
  DecodedDiff out;
  enum { kPrefix, kBefore, kAfter, kSuffix, kTest } state = kPrefix;
  for (size_t i = 1; i < example.ids.size(); ++i) {
    int id = example.ids[i];
    if (id == Vocabulary::kBefore) { state = kBefore; continue; }
    if (id == Vocabulary::kAfter) { state = kAfter; continue; }
    if (id == Vocabulary::kEndDiff) { state = kSuffix; continue; }
    if (id == Vocabulary::kSep) { state = kTest; continue; }
    const std::string& tok = vocab.Token(id);
    switch (state) {
      case kPrefix:
      case kSuffix:
        out.original_method.push_back(tok);
        out.mutated_method.push_back(tok);
        break;
      case kBefore: out.original_method.push_back(tok); break;
      case kAfter: out.mutated_method.push_back(tok); break;
      case kTest: out.test.push_back(tok); break;
    }
  }
  return out;
}

std::string DecodeText(const EncodedExample& example, const Vocabulary& vocab) {
  std::string out;
  for (int id : example.ids) {
    if (!out.empty()) out += ' ';
    out += vocab.Token(id);
  }
  return out;
}

nlohmann::json ExampleToJson(const EncodedExample& ex) {
  nlohmann::json j{
      {"mutant_id", ex.mutant_id},
      {"test_id", ex.test_id},
      {"representation", RepresentationName(ex.representation)},
      {"ids", ex.ids},
      {"truncated", ex.truncated},
      {"features",
       {{"method_name", ex.features.method_name},
        {"test_name", ex.features.test_name},
        {"line_before", ex.features.line_before},
        {"line_after", ex.features.line_after},
        {"operator", ex.features.operator_kind},
        {"sub_operator", ex.features.sub_operator}}},
  };
  j["label"] = ex.label ? nlohmann::json(*ex.label ? "detected" : "undetected")
                        : nlohmann::json(nullptr);
  if (!ex.variant.empty()) j["variant"] = ex.variant;
  return j;
}

EncodedExample ExampleFromJson(const nlohmann::json& j) {
  EncodedExample ex;
  ex.mutant_id = j.at("mutant_id").get<std::string>();
  ex.test_id = j.at("test_id").get<std::string>();
  auto repr = RepresentationFromName(j.at("representation").get<std::string>());
  if (!repr) throw std::runtime_error("unknown representation in record");
  ex.representation = *repr;
  ex.ids = j.at("ids").get<std::vector<int>>();
  ex.truncated = j.at("truncated").get<bool>();
  const auto& label = j.at("label");
  if (!label.is_null()) ex.label = label.get<std::string>() == "detected";
  ex.variant = j.value("variant", "");
  const auto& f = j.at("features");
  ex.features.method_name = f.at("method_name").get<std::vector<int>>();
  ex.features.test_name = f.at("test_name").get<std::vector<int>>();
  ex.features.line_before = f.at("line_before").get<std::vector<int>>();
  ex.features.line_after = f.at("line_after").get<std::vector<int>>();
  ex.features.operator_kind = f.at("operator").get<int>();
  ex.features.sub_operator = f.at("sub_operator").get<int>();
  return ex;
}

}  // namespace pmt
