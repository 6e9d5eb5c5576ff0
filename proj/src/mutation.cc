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

#include "pmt/mutation.h"

#include <algorithm>
#include <array>
#include <tuple>

#include "pmt/hash.h"

namespace pmt {

namespace {

constexpr std::array<BinaryOp, 6> kRelational = {
    BinaryOp::kEq, BinaryOp::kNe, BinaryOp::kLt,
    BinaryOp::kLe, BinaryOp::kGt, BinaryOp::kGe};
constexpr std::array<BinaryOp, 5> kArithmetic = {
    BinaryOp::kAdd, BinaryOp::kSub, BinaryOp::kMul, BinaryOp::kDiv,
    BinaryOp::kMod};

struct Collector {
  const Program& program;
  std::string_view project;
  const FunctionDef* function = nullptr;
  std::vector<Mutant> out;

  void Add(MutantOperatorKind kind, std::string sub, int line, SourceSpan span,
           std::string after_text) {
    Mutant m;
    m.project = std::string(project);
    m.op = kind;
    m.sub_operator = std::move(sub);
    m.function = function->name;
    m.line = line;
    m.span = span;
    m.before_text = program.source_text().substr(span.begin, span.size());
    m.after_text = std::move(after_text);
    m.before_tokens = LexTexts(m.before_text);
    m.after_tokens = LexTexts(m.after_text);
    if (m.before_tokens == m.after_tokens) return;
    m.id = ComputeMutantId(m);
    out.push_back(std::move(m));
  }

  void BinarySite(const Expr& e) {
    auto replace_from = [&](MutantOperatorKind kind, auto& family) {
      for (BinaryOp repl : family) {
        if (repl == e.binary_op) continue;
        std::string sym(BinaryOpSymbol(repl));
        Add(kind, sym, e.op_line, e.op_span, sym);
      }
    };
    if (IsRelational(e.binary_op)) {
      replace_from(MutantOperatorKind::kROR, kRelational);
    } else if (IsArithmetic(e.binary_op)) {
      replace_from(MutantOperatorKind::kAOR, kArithmetic);
    } else {
      BinaryOp repl =
          e.binary_op == BinaryOp::kAnd ? BinaryOp::kOr : BinaryOp::kAnd;
      std::string sym(BinaryOpSymbol(repl));
      Add(MutantOperatorKind::kLOR, sym, e.op_line, e.op_span, sym);
    }
  }

  void ConditionSite(const Expr& cond) {
    std::string text =
        program.source_text().substr(cond.span.begin, cond.span.size());
    Add(MutantOperatorKind::kCondNeg, "", cond.line, cond.span,
        "!(" + text + ")");
    Add(MutantOperatorKind::kCondTrue, "", cond.line, cond.span, "true");
    Add(MutantOperatorKind::kCondFalse, "", cond.line, cond.span, "false");
  }

  void VisitExpr(const Expr& e) {
    if (e.kind == Expr::Kind::kBinary) BinarySite(e);
    for (const auto& c : e.children) VisitExpr(*c);
  }

  void VisitBlock(const Block& block) {
    for (const auto& s : block) {
      if (s->kind == Stmt::Kind::kIf || s->kind == Stmt::Kind::kWhile) {
        ConditionSite(*s->exprs[0]);
      }
      for (const auto& e : s->exprs) VisitExpr(*e);
      VisitBlock(s->body);
      VisitBlock(s->else_body);
    }
  }
};

}  // namespace

std::string_view OperatorKindName(MutantOperatorKind kind) {
  switch (kind) {
    case MutantOperatorKind::kROR: return "ROR";
    case MutantOperatorKind::kAOR: return "AOR";
    case MutantOperatorKind::kLOR: return "LOR";
    case MutantOperatorKind::kCondNeg: return "COND_NEG";
    case MutantOperatorKind::kCondTrue: return "COND_TRUE";
    case MutantOperatorKind::kCondFalse: return "COND_FALSE";
  }
  return "?";
}

std::optional<MutantOperatorKind> OperatorKindFromName(std::string_view name) {
  for (int i = 0; i < kOperatorKindCount; ++i) {
    auto kind = static_cast<MutantOperatorKind>(i);
    if (OperatorKindName(kind) == name) return kind;
  }
  return std::nullopt;
}

int Mutant::sub_operator_id() const {
  if (auto op = BinaryOpFromSymbol(sub_operator)) return static_cast<int>(*op);
  return kSubOperatorCount - 1;
}

std::string ComputeMutantId(const Mutant& m) {
  Fnv1a h;
  h.Field(m.project)
      .Field(OperatorKindName(m.op))
      .Field(m.sub_operator)
      .Field(m.function)
      .Field(m.line)
      .Field(static_cast<int64_t>(m.span.begin))
      .Field(static_cast<int64_t>(m.span.end));
  for (const auto& t : m.before_tokens) h.Field(t);
  h.Field("|");
  for (const auto& t : m.after_tokens) h.Field(t);
  h.Field(m.before_text).Field(m.after_text);
  return h.hex();
}

std::vector<Mutant> GenerateMutants(const Program& program,
                                    std::string_view project) {
  Collector collector{program, project, nullptr, {}};
  for (const auto& fn : program.functions()) {
    collector.function = &fn;
    collector.VisitBlock(fn.body);
  }
  auto key = [](const Mutant& m) {
    return std::make_tuple(m.line, m.span.begin, m.span.end,
                           static_cast<int>(m.op), m.sub_operator_id());
  };
  std::stable_sort(collector.out.begin(), collector.out.end(),
                   [&](const Mutant& a, const Mutant& b) {
                     return key(a) < key(b);
                   });
  return std::move(collector.out);
}

std::string ApplyMutant(std::string_view source, const Mutant& m) {
  if (m.span.end > source.size() || m.span.begin > m.span.end) {
    throw StaleMutantError("mutant " + m.id + ": span outside source");
  }
  std::string_view current = source.substr(m.span.begin, m.span.size());
  if (current != m.before_text || LexTexts(current) != m.before_tokens) {
    throw StaleMutantError("mutant " + m.id +
                           ": source does not match mutant span");
  }
  std::string out;
  out.reserve(source.size() + m.after_text.size());
  out.append(source.substr(0, m.span.begin));
  out.append(m.after_text);
  out.append(source.substr(m.span.end));
  return out;
}

std::string RevertMutant(std::string_view mutated, const Mutant& m) {
  size_t end = m.span.begin + m.after_text.size();
  if (end > mutated.size() ||
      mutated.substr(m.span.begin, m.after_text.size()) != m.after_text) {
    throw StaleMutantError("mutant " + m.id +
                           ": mutated source does not match replacement");
  }
  std::string out;
  out.append(mutated.substr(0, m.span.begin));
  out.append(m.before_text);
  out.append(mutated.substr(end));
  return out;
}

nlohmann::json MutantToJson(const Mutant& m) {
  return nlohmann::json{
      {"id", m.id},
      {"project", m.project},
      {"operator", OperatorKindName(m.op)},
      {"sub_operator", m.sub_operator},
      {"function", m.function},
      {"line", m.line},
      {"span", {m.span.begin, m.span.end}},
      {"before", m.before_tokens},
      {"after", m.after_tokens},
      {"before_text", m.before_text},
      {"after_text", m.after_text},
  };
}

Mutant MutantFromJson(const nlohmann::json& j) {
  Mutant m;
  m.id = j.at("id").get<std::string>();
  m.project = j.value("project", "");
  auto kind = OperatorKindFromName(j.at("operator").get<std::string>());
  if (!kind) throw std::runtime_error("unknown mutation operator in record");
  m.op = *kind;
  m.sub_operator = j.at("sub_operator").get<std::string>();
  m.function = j.at("function").get<std::string>();
  m.line = j.at("line").get<int>();
  m.span = {j.at("span").at(0).get<size_t>(), j.at("span").at(1).get<size_t>()};
  m.before_tokens = j.at("before").get<std::vector<std::string>>();
  m.after_tokens = j.at("after").get<std::vector<std::string>>();
  m.before_text = j.at("before_text").get<std::string>();
  m.after_text = j.at("after_text").get<std::string>();
  return m;
}

}  // namespace pmt
