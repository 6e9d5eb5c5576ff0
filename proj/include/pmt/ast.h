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

#ifndef PMT_AST_H_
#define PMT_AST_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pmt/lexer.h"

namespace pmt {

enum class BinaryOp {
  kAdd, kSub, kMul, kDiv, kMod,
  kEq, kNe, kLt, kLe, kGt, kGe,
  kAnd, kOr,
};

enum class UnaryOp { kNot, kNeg };

std::string_view BinaryOpSymbol(BinaryOp op);
std::optional<BinaryOp> BinaryOpFromSymbol(std::string_view symbol);
bool IsRelational(BinaryOp op);
bool IsArithmetic(BinaryOp op);
bool IsLogical(BinaryOp op);

enum class Builtin { kNone, kLen, kArray };

struct Expr {
  enum class Kind {
    kInt, kBool, kLocal, kConst, kArrayLit, kIndex, kCall, kUnary, kBinary,
  };

  Kind kind = Kind::kInt;
  SourceSpan span;
  int line = 0;

  int64_t int_value = 0;
  bool bool_value = false;
  std::string name;
  // Local slot for kLocal/kIndex bases, constant index for kConst,
  // function index for user calls.
  int slot = -1;
  Builtin builtin = Builtin::kNone;

  UnaryOp unary_op = UnaryOp::kNot;
  BinaryOp binary_op = BinaryOp::kAdd;
  SourceSpan op_span;
  int op_line = 0;

  std::vector<std::unique_ptr<Expr>> children;
};

using ExprPtr = std::unique_ptr<Expr>;

struct Stmt;
using StmtPtr = std::unique_ptr<Stmt>;
using Block = std::vector<StmtPtr>;

struct Stmt {
  enum class Kind {
    kLet, kAssign, kIndexAssign, kIf, kWhile, kReturn, kAssert, kAssertEq,
    kExpr,
  };

  Kind kind = Kind::kExpr;
  SourceSpan span;
  int line = 0;

  std::string name;
  int slot = -1;
  // kLet/kAssign: [value]; kIndexAssign: [index, value]; kIf/kWhile:
  // [condition]; kReturn: [] or [value]; kAssert: [cond]; kAssertEq: [a, b].
  std::vector<ExprPtr> exprs;
  Block body;
  Block else_body;
};

struct Constant {
  std::string name;
  int64_t value = 0;
  SourceSpan span;
  int line = 0;
};

struct FunctionDef {
  std::string name;
  std::vector<std::string> params;
  Block body;
  bool is_test = false;
  SourceSpan span;       // `fn` / `test` keyword through closing brace
  SourceSpan name_span;
  int line = 0;
  int end_line = 0;
  int num_slots = 0;
};

using TestDef = FunctionDef;

struct LineColumn {
  int line = 1;
  int column = 1;
};

// Parsed MiniLang compilation unit. Immutable once parsed; shareable across
// threads for concurrent interpretation.
class Program {
 public:
  Program() = default;
  Program(Program&&) = default;
  Program& operator=(Program&&) = default;
  Program(const Program&) = delete;
  Program& operator=(const Program&) = delete;

  const std::string& source_text() const { return source_text_; }
  const std::vector<FunctionDef>& functions() const { return functions_; }
  const std::vector<TestDef>& tests() const { return tests_; }
  const std::vector<Constant>& constants() const { return constants_; }

  const FunctionDef* FindFunction(std::string_view name) const;
  const TestDef* FindTest(std::string_view name) const;

  LineColumn Locate(size_t offset) const;
  int line_count() const { return static_cast<int>(line_starts_.size()); }
  // Byte range of a 1-based line, excluding the newline.
  SourceSpan LineSpan(int line) const;

 private:
  friend class Parser;

  std::string source_text_;
  std::vector<FunctionDef> functions_;
  std::vector<TestDef> tests_;
  std::vector<Constant> constants_;
  std::vector<size_t> line_starts_;
};

// Duplicate names, unresolved references, tests without assertions.
class DefinitionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Program Parse(std::string source);

}  // namespace pmt

#endif  // PMT_AST_H_
