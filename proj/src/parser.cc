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

#include <algorithm>
#include <charconv>
#include <limits>
#include <unordered_map>
#include <unordered_set>

#include "pmt/ast.h"

namespace pmt {

namespace {

constexpr BinaryOp kAllBinaryOps[] = {
    BinaryOp::kAdd, BinaryOp::kSub, BinaryOp::kMul, BinaryOp::kDiv,
    BinaryOp::kMod, BinaryOp::kEq,  BinaryOp::kNe,  BinaryOp::kLt,
    BinaryOp::kLe,  BinaryOp::kGt,  BinaryOp::kGe,  BinaryOp::kAnd,
    BinaryOp::kOr};

Builtin BuiltinFromName(std::string_view name) {
  if (name == "len") return Builtin::kLen;
  if (name == "array") return Builtin::kArray;
  return Builtin::kNone;
}

size_t BuiltinArity(Builtin b) {
  switch (b) {
    case Builtin::kLen:
    case Builtin::kArray:
      return 1;
    case Builtin::kNone:
      break;
  }
  return 0;
}

bool ContainsAssertion(const Block& block) {
  for (const auto& stmt : block) {
    if (stmt->kind == Stmt::Kind::kAssert ||
        stmt->kind == Stmt::Kind::kAssertEq) {
      return true;
    }
    if (ContainsAssertion(stmt->body) || ContainsAssertion(stmt->else_body)) {
      return true;
    }
  }
  return false;
}

}  // namespace

std::string_view BinaryOpSymbol(BinaryOp op) {
  switch (op) {
    case BinaryOp::kAdd: return "+";
    case BinaryOp::kSub: return "-";
    case BinaryOp::kMul: return "*";
    case BinaryOp::kDiv: return "/";
    case BinaryOp::kMod: return "%";
    case BinaryOp::kEq: return "==";
    case BinaryOp::kNe: return "!=";
    case BinaryOp::kLt: return "<";
    case BinaryOp::kLe: return "<=";
    case BinaryOp::kGt: return ">";
    case BinaryOp::kGe: return ">=";
    case BinaryOp::kAnd: return "&&";
    case BinaryOp::kOr: return "||";
  }
  return "?";
}

std::optional<BinaryOp> BinaryOpFromSymbol(std::string_view symbol) {
  for (auto op : kAllBinaryOps) {
    if (BinaryOpSymbol(op) == symbol) return op;
  }
  return std::nullopt;
}

bool IsRelational(BinaryOp op) {
  return op >= BinaryOp::kEq && op <= BinaryOp::kGe;
}

bool IsArithmetic(BinaryOp op) { return op <= BinaryOp::kMod; }

bool IsLogical(BinaryOp op) {
  return op == BinaryOp::kAnd || op == BinaryOp::kOr;
}

const FunctionDef* Program::FindFunction(std::string_view name) const {
  for (const auto& f : functions_) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

const TestDef* Program::FindTest(std::string_view name) const {
  for (const auto& t : tests_) {
    if (t.name == name) return &t;
  }
  return nullptr;
}

LineColumn Program::Locate(size_t offset) const {
  auto it = std::upper_bound(line_starts_.begin(), line_starts_.end(), offset);
  int line = static_cast<int>(it - line_starts_.begin());
  return {line, static_cast<int>(offset - line_starts_[line - 1]) + 1};
}

SourceSpan Program::LineSpan(int line) const {
  size_t begin = line_starts_.at(line - 1);
  size_t end = line < line_count() ? line_starts_[line] - 1
                                   : source_text_.size();
  return {begin, end};
}

class Parser {
 public:
  explicit Parser(std::string source) {
    program_.source_text_ = std::move(source);
    tokens_ = Lex(program_.source_text_);
    const std::string& text = program_.source_text_;
    program_.line_starts_.push_back(0);
    for (size_t i = 0; i < text.size(); ++i) {
      if (text[i] == '\n') program_.line_starts_.push_back(i + 1);
    }
  }

  Program Run() {
    while (Peek().kind != TokenKind::kEnd) {
      if (PeekIs("fn")) {
        ParseFunction(/*is_test=*/false);
      } else if (PeekIs("test")) {
        ParseFunction(/*is_test=*/true);
      } else if (PeekIs("const")) {
        ParseConstant();
      } else {
        Fail(Peek(), "expected 'fn', 'test' or 'const'");
      }
    }
    Resolve();
    return std::move(program_);
  }

 private:
  const Token& Peek(size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  bool PeekIs(std::string_view text) const {
    const Token& t = Peek();
    return t.kind != TokenKind::kEnd && t.kind != TokenKind::kInteger &&
           t.text == text;
  }
  const Token& Advance() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void Fail(const Token& at, const std::string& message) const {
    std::string found =
        at.kind == TokenKind::kEnd ? "end of input" : "'" + at.text + "'";
    throw SyntaxError(at.line, at.column, message + ", found " + found);
  }

  const Token& Expect(std::string_view text) {
    if (!PeekIs(text)) Fail(Peek(), "expected '" + std::string(text) + "'");
    return Advance();
  }

  const Token& ExpectIdentifier() {
    if (Peek().kind != TokenKind::kIdentifier) {
      Fail(Peek(), "expected identifier");
    }
    return Advance();
  }

  void DeclareTopLevel(const Token& name_tok) {
    if (BuiltinFromName(name_tok.text) != Builtin::kNone) {
      throw DefinitionError("line " + std::to_string(name_tok.line) +
                            ": '" + name_tok.text + "' is a builtin");
    }
    if (!top_level_names_.insert(name_tok.text).second) {
      throw DefinitionError("line " + std::to_string(name_tok.line) +
                            ": duplicate definition of '" + name_tok.text +
                            "'");
    }
  }

  void ParseConstant() {
    const Token& kw = Advance();
    const Token& name = ExpectIdentifier();
    DeclareTopLevel(name);
    Expect("=");
    bool negative = false;
    if (PeekIs("-")) {
      Advance();
      negative = true;
    }
    if (Peek().kind != TokenKind::kInteger) {
      Fail(Peek(), "constant initializer must be an integer literal");
    }
    int64_t value = ParseInteger(Advance(), negative);
    const Token& semi = Expect(";");
    program_.constants_.push_back(
        {name.text, value, {kw.span.begin, semi.span.end}, kw.line});
  }

  int64_t ParseInteger(const Token& tok, bool negative) {
    uint64_t magnitude = 0;
    auto [ptr, ec] = std::from_chars(tok.text.data(),
                                     tok.text.data() + tok.text.size(),
                                     magnitude);
    (void)ptr;
    uint64_t limit =
        static_cast<uint64_t>(std::numeric_limits<int64_t>::max()) +
        (negative ? 1 : 0);
    if (ec != std::errc() || magnitude > limit) {
      Fail(tok, "integer literal out of range");
    }
    return negative ? static_cast<int64_t>(0 - magnitude)
                    : static_cast<int64_t>(magnitude);
  }

  void ParseFunction(bool is_test) {
    const Token& kw = Advance();
    const Token& name = ExpectIdentifier();
    DeclareTopLevel(name);
    FunctionDef fn;
    fn.name = name.text;
    fn.name_span = name.span;
    fn.is_test = is_test;
    fn.line = kw.line;
    locals_.clear();
    if (!is_test) {
      Expect("(");
      if (!PeekIs(")")) {
        while (true) {
          const Token& param = ExpectIdentifier();
          if (locals_.count(param.text)) {
            throw DefinitionError("line " + std::to_string(param.line) +
                                  ": duplicate parameter '" + param.text +
                                  "'");
          }
          locals_[param.text] = static_cast<int>(fn.params.size());
          fn.params.push_back(param.text);
          if (!PeekIs(",")) break;
          Advance();
        }
      }
      Expect(")");
    }
    size_t close_end = 0;
    fn.body = ParseBlock(&close_end, &fn.end_line);
    fn.span = {kw.span.begin, close_end};
    fn.num_slots = static_cast<int>(locals_.size());
    if (is_test) {
      if (!ContainsAssertion(fn.body)) {
        throw DefinitionError("line " + std::to_string(kw.line) + ": test '" +
                              fn.name + "' contains no assertion");
      }
      program_.tests_.push_back(std::move(fn));
    } else {
      program_.functions_.push_back(std::move(fn));
    }
  }

  Block ParseBlock(size_t* close_end = nullptr, int* close_line = nullptr) {
    Expect("{");
    Block block;
    while (!PeekIs("}")) {
      if (Peek().kind == TokenKind::kEnd) Fail(Peek(), "expected '}'");
      block.push_back(ParseStatement());
    }
    const Token& close = Advance();
    if (close_end) *close_end = close.span.end;
    if (close_line) *close_line = close.line;
    return block;
  }

  int SlotFor(const std::string& name, bool declare, const Token& at) {
    auto it = locals_.find(name);
    if (it != locals_.end()) return it->second;
    if (!declare) {
      throw DefinitionError("line " + std::to_string(at.line) +
                            ": assignment to undeclared variable '" + name +
                            "'");
    }
    int slot = static_cast<int>(locals_.size());
    locals_[name] = slot;
    return slot;
  }

  StmtPtr ParseStatement() {
    auto stmt = std::make_unique<Stmt>();
    const Token& first = Peek();
    stmt->line = first.line;
    size_t begin = first.span.begin;
    if (PeekIs("let")) {
      Advance();
      const Token& name = ExpectIdentifier();
      Expect("=");
      auto value = ParseExpr();
      stmt->kind = Stmt::Kind::kLet;
      stmt->name = name.text;
      // Declared after the initializer so `let x = x;` cannot self-reference.
      stmt->slot = SlotFor(name.text, /*declare=*/true, name);
      stmt->exprs.push_back(std::move(value));
      stmt->span = {begin, Expect(";").span.end};
    } else if (PeekIs("if")) {
      Advance();
      Expect("(");
      stmt->kind = Stmt::Kind::kIf;
      stmt->exprs.push_back(ParseExpr());
      Expect(")");
      stmt->body = ParseBlock();
      size_t end = tokens_[pos_ - 1].span.end;
      if (PeekIs("else")) {
        Advance();
        if (PeekIs("if")) {
          stmt->else_body.push_back(ParseStatement());
        } else {
          stmt->else_body = ParseBlock();
        }
        end = tokens_[pos_ - 1].span.end;
      }
      stmt->span = {begin, end};
    } else if (PeekIs("while")) {
      Advance();
      Expect("(");
      stmt->kind = Stmt::Kind::kWhile;
      stmt->exprs.push_back(ParseExpr());
      Expect(")");
      stmt->body = ParseBlock();
      stmt->span = {begin, tokens_[pos_ - 1].span.end};
    } else if (PeekIs("return")) {
      Advance();
      stmt->kind = Stmt::Kind::kReturn;
      if (!PeekIs(";")) stmt->exprs.push_back(ParseExpr());
      stmt->span = {begin, Expect(";").span.end};
    } else if (PeekIs("assert")) {
      Advance();
      Expect("(");
      stmt->kind = Stmt::Kind::kAssert;
      stmt->exprs.push_back(ParseExpr());
      Expect(")");
      stmt->span = {begin, Expect(";").span.end};
    } else if (PeekIs("assert_eq")) {
      Advance();
      Expect("(");
      stmt->kind = Stmt::Kind::kAssertEq;
      stmt->exprs.push_back(ParseExpr());
      Expect(",");
      stmt->exprs.push_back(ParseExpr());
      Expect(")");
      stmt->span = {begin, Expect(";").span.end};
    } else {
      auto target = ParseExpr();
      if (PeekIs("=")) {
        const Token& eq = Advance();
        auto value = ParseExpr();
        if (target->kind == Expr::Kind::kLocal ||
            target->kind == Expr::Kind::kConst) {
          stmt->kind = Stmt::Kind::kAssign;
          stmt->name = target->name;
          stmt->slot = SlotFor(target->name, /*declare=*/false, first);
          stmt->exprs.push_back(std::move(value));
        } else if (target->kind == Expr::Kind::kIndex &&
                   target->children[0]->kind == Expr::Kind::kLocal) {
          stmt->kind = Stmt::Kind::kIndexAssign;
          stmt->name = target->children[0]->name;
          stmt->slot = target->children[0]->slot;
          stmt->exprs.push_back(std::move(target->children[1]));
          stmt->exprs.push_back(std::move(value));
        } else {
          Fail(eq, "invalid assignment target");
        }
      } else {
        stmt->kind = Stmt::Kind::kExpr;
        stmt->exprs.push_back(std::move(target));
      }
      stmt->span = {begin, Expect(";").span.end};
    }
    return stmt;
  }

  // Precedence climbing; level 0 is `||`.
  static int Precedence(BinaryOp op) {
    switch (op) {
      case BinaryOp::kOr: return 0;
      case BinaryOp::kAnd: return 1;
      case BinaryOp::kEq:
      case BinaryOp::kNe: return 2;
      case BinaryOp::kLt:
      case BinaryOp::kLe:
      case BinaryOp::kGt:
      case BinaryOp::kGe: return 3;
      case BinaryOp::kAdd:
      case BinaryOp::kSub: return 4;
      default: return 5;
    }
  }

  std::optional<BinaryOp> PeekBinary() const {
    const Token& t = Peek();
    if (t.kind != TokenKind::kSymbol) return std::nullopt;
    return BinaryOpFromSymbol(t.text);
  }

  ExprPtr ParseExpr(int min_prec = 0) {
    auto lhs = ParseUnary();
    while (true) {
      auto op = PeekBinary();
      if (!op || Precedence(*op) < min_prec) break;
      const Token& op_tok = Advance();
      auto rhs = ParseExpr(Precedence(*op) + 1);
      auto node = std::make_unique<Expr>();
      node->kind = Expr::Kind::kBinary;
      node->binary_op = *op;
      node->op_span = op_tok.span;
      node->op_line = op_tok.line;
      node->line = op_tok.line;
      node->span = {lhs->span.begin, rhs->span.end};
      node->children.push_back(std::move(lhs));
      node->children.push_back(std::move(rhs));
      lhs = std::move(node);
    }
    return lhs;
  }

  ExprPtr ParseUnary() {
    if (PeekIs("!") || PeekIs("-")) {
      const Token& op_tok = Advance();
      auto operand = ParseUnary();
      auto node = std::make_unique<Expr>();
      node->kind = Expr::Kind::kUnary;
      node->unary_op = op_tok.text == "!" ? UnaryOp::kNot : UnaryOp::kNeg;
      node->op_span = op_tok.span;
      node->op_line = op_tok.line;
      node->line = op_tok.line;
      node->span = {op_tok.span.begin, operand->span.end};
      node->children.push_back(std::move(operand));
      return node;
    }
    return ParsePostfix();
  }

  ExprPtr ParsePostfix() {
    auto expr = ParsePrimary();
    while (PeekIs("[")) {
      Advance();
      auto index = ParseExpr();
      const Token& close = Expect("]");
      auto node = std::make_unique<Expr>();
      node->kind = Expr::Kind::kIndex;
      node->line = expr->line;
      node->span = {expr->span.begin, close.span.end};
      node->children.push_back(std::move(expr));
      node->children.push_back(std::move(index));
      expr = std::move(node);
    }
    return expr;
  }

  ExprPtr ParsePrimary() {
    const Token& tok = Peek();
    auto node = std::make_unique<Expr>();
    node->line = tok.line;
    node->span = tok.span;
    if (tok.kind == TokenKind::kInteger) {
      Advance();
      node->kind = Expr::Kind::kInt;
      node->int_value = ParseInteger(tok, /*negative=*/false);
      return node;
    }
    if (PeekIs("true") || PeekIs("false")) {
      Advance();
      node->kind = Expr::Kind::kBool;
      node->bool_value = tok.text == "true";
      return node;
    }
    if (PeekIs("(")) {
      Advance();
      auto inner = ParseExpr();
      Expect(")");
      // Parentheses do not get their own node; widen the span instead so
      // the source slice still covers them.
      inner->span = {tok.span.begin, tokens_[pos_ - 1].span.end};
      return inner;
    }
    if (PeekIs("[")) {
      Advance();
      node->kind = Expr::Kind::kArrayLit;
      if (!PeekIs("]")) {
        while (true) {
          node->children.push_back(ParseExpr());
          if (!PeekIs(",")) break;
          Advance();
        }
      }
      node->span.end = Expect("]").span.end;
      return node;
    }
    if (tok.kind == TokenKind::kIdentifier) {
      Advance();
      node->name = tok.text;
      if (PeekIs("(")) {
        Advance();
        node->kind = Expr::Kind::kCall;
        node->builtin = BuiltinFromName(tok.text);
        if (!PeekIs(")")) {
          while (true) {
            node->children.push_back(ParseExpr());
            if (!PeekIs(",")) break;
            Advance();
          }
        }
        node->span.end = Expect(")").span.end;
        return node;
      }
      auto it = locals_.find(tok.text);
      if (it != locals_.end()) {
        node->kind = Expr::Kind::kLocal;
        node->slot = it->second;
      } else {
        node->kind = Expr::Kind::kConst;  // resolved after all definitions
      }
      return node;
    }
    Fail(tok, "expected expression");
  }

  void Resolve() {
    for (auto& fn : program_.functions_) ResolveBlock(fn.body);
    for (auto& t : program_.tests_) ResolveBlock(t.body);
  }

  void ResolveBlock(Block& block) {
    for (auto& stmt : block) {
      if (stmt->kind == Stmt::Kind::kAssign && stmt->slot < 0) {
        throw DefinitionError("line " + std::to_string(stmt->line) +
                              ": cannot assign to '" + stmt->name + "'");
      }
      for (auto& e : stmt->exprs) ResolveExpr(*e);
      ResolveBlock(stmt->body);
      ResolveBlock(stmt->else_body);
    }
  }

  void ResolveExpr(Expr& e) {
    for (auto& c : e.children) ResolveExpr(*c);
    if (e.kind == Expr::Kind::kConst) {
      const auto& consts = program_.constants_;
      auto it = std::find_if(consts.begin(), consts.end(),
                             [&](const Constant& c) { return c.name == e.name; });
      if (it == consts.end()) {
        throw DefinitionError("line " + std::to_string(e.line) +
                              ": undefined variable '" + e.name + "'");
      }
      e.slot = static_cast<int>(it - consts.begin());
    } else if (e.kind == Expr::Kind::kCall) {
      size_t arity = 0;
      if (e.builtin != Builtin::kNone) {
        arity = BuiltinArity(e.builtin);
      } else {
        const auto& fns = program_.functions_;
        auto it = std::find_if(fns.begin(), fns.end(), [&](const FunctionDef& f) {
          return f.name == e.name;
        });
        if (it == fns.end()) {
          throw DefinitionError("line " + std::to_string(e.line) +
                                ": call to undeclared function '" + e.name +
                                "'");
        }
        e.slot = static_cast<int>(it - fns.begin());
        arity = it->params.size();
      }
      if (arity != e.children.size()) {
        throw DefinitionError("line " + std::to_string(e.line) + ": '" +
                              e.name + "' expects " + std::to_string(arity) +
                              " argument(s), got " +
                              std::to_string(e.children.size()));
      }
    }
  }

  Program program_;
  std::vector<Token> tokens_;
  size_t pos_ = 0;
  std::unordered_set<std::string> top_level_names_;
  std::unordered_map<std::string, int> locals_;
};

Program Parse(std::string source) { return Parser(std::move(source)).Run(); }

}  // namespace pmt
