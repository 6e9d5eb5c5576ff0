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

#include "pmt/interpreter.h"

#include <variant>

namespace pmt {

namespace {

using Array = std::vector<int64_t>;

struct Unset {
  friend bool operator==(const Unset&, const Unset&) = default;
};

using Value = std::variant<Unset, int64_t, bool, Array>;

struct Abort {
  TestStatus status;
  std::string message;
};

[[noreturn]] void RuntimeError(int line, const std::string& message) {
  throw Abort{TestStatus::kRuntimeError,
              "line " + std::to_string(line) + ": " + message};
}

std::string_view TypeName(const Value& v) {
  switch (v.index()) {
    case 1: return "int";
    case 2: return "bool";
    case 3: return "array";
    default: return "unset";
  }
}

int64_t AsInt(const Value& v, int line) {
  if (auto* i = std::get_if<int64_t>(&v)) return *i;
  RuntimeError(line, "expected int, got " + std::string(TypeName(v)));
}

bool AsBool(const Value& v, int line) {
  if (auto* b = std::get_if<bool>(&v)) return *b;
  RuntimeError(line, "expected bool, got " + std::string(TypeName(v)));
}

// Two's-complement wrapping arithmetic.
int64_t Wrap(uint64_t v) { return static_cast<int64_t>(v); }

class Interpreter {
 public:
  Interpreter(const Program& program, uint64_t budget,
              ExecutionObserver* observer)
      : program_(program),
        budget_(budget),
        observer_(observer),
        hit_(program.line_count() + 1, 0) {}

  TestOutcome Run(const TestDef& test) {
    TestOutcome outcome;
    try {
      std::vector<Value> frame(test.num_slots);
      Value ignored;
      ExecBlock(test.body, frame, &ignored);
      outcome.status = TestStatus::kPass;
    } catch (const Abort& abort) {
      outcome.status = abort.status;
      outcome.message = abort.message;
    }
    outcome.steps_used = steps_;
    for (int line = 1; line < static_cast<int>(hit_.size()); ++line) {
      if (hit_[line]) outcome.covered_lines.push_back(line);
    }
    return outcome;
  }

 private:
  void Tick(int line) {
    if (steps_ >= budget_) {
      steps_ = budget_ + 1;
      throw Abort{TestStatus::kBudgetExceeded,
                  "step budget of " + std::to_string(budget_) + " exceeded"};
    }
    ++steps_;
    hit_[line] = 1;
    if (observer_) observer_->OnNode(line);
  }

  // Returns true when a `return` was executed.
  bool ExecBlock(const Block& block, std::vector<Value>& frame, Value* ret) {
    for (const auto& stmt : block) {
      if (Exec(*stmt, frame, ret)) return true;
    }
    return false;
  }

  bool Exec(const Stmt& s, std::vector<Value>& frame, Value* ret) {
    Tick(s.line);
    switch (s.kind) {
      case Stmt::Kind::kLet:
      case Stmt::Kind::kAssign:
        frame[s.slot] = Eval(*s.exprs[0], frame);
        return false;
      case Stmt::Kind::kIndexAssign: {
        int64_t index = AsInt(Eval(*s.exprs[0], frame), s.line);
        int64_t value = AsInt(Eval(*s.exprs[1], frame), s.line);
        auto* arr = std::get_if<Array>(&frame[s.slot]);
        if (!arr) RuntimeError(s.line, "'" + s.name + "' is not an array");
        CheckIndex(*arr, index, s.line);
        (*arr)[index] = value;
        return false;
      }
      case Stmt::Kind::kIf:
        if (AsBool(Eval(*s.exprs[0], frame), s.line)) {
          return ExecBlock(s.body, frame, ret);
        }
        return ExecBlock(s.else_body, frame, ret);
      case Stmt::Kind::kWhile:
        while (AsBool(Eval(*s.exprs[0], frame), s.line)) {
          if (ExecBlock(s.body, frame, ret)) return true;
          Tick(s.line);
        }
        return false;
      case Stmt::Kind::kReturn:
        *ret = s.exprs.empty() ? Value{int64_t{0}} : Eval(*s.exprs[0], frame);
        return true;
      case Stmt::Kind::kAssert:
        if (!AsBool(Eval(*s.exprs[0], frame), s.line)) {
          throw Abort{TestStatus::kAssertFail,
                      "line " + std::to_string(s.line) + ": assertion failed"};
        }
        return false;
      case Stmt::Kind::kAssertEq: {
        Value a = Eval(*s.exprs[0], frame);
        Value b = Eval(*s.exprs[1], frame);
        if (a.index() != b.index()) {
          RuntimeError(s.line, "assert_eq type mismatch");
        }
        if (a != b) {
          throw Abort{TestStatus::kAssertFail,
                      "line " + std::to_string(s.line) +
                          ": assert_eq failed"};
        }
        return false;
      }
      case Stmt::Kind::kExpr:
        Eval(*s.exprs[0], frame);
        return false;
    }
    return false;
  }

  static void CheckIndex(const Array& arr, int64_t index, int line) {
    if (index < 0 || index >= static_cast<int64_t>(arr.size())) {
      RuntimeError(line, "index " + std::to_string(index) +
                             " out of bounds for length " +
                             std::to_string(arr.size()));
    }
  }

  Value Eval(const Expr& e, std::vector<Value>& frame) {
    Tick(e.line);
    switch (e.kind) {
      case Expr::Kind::kInt:
        return e.int_value;
      case Expr::Kind::kBool:
        return e.bool_value;
      case Expr::Kind::kLocal: {
        const Value& v = frame[e.slot];
        if (std::holds_alternative<Unset>(v)) {
          RuntimeError(e.line, "variable '" + e.name + "' used before assignment");
        }
        return v;
      }
      case Expr::Kind::kConst:
        return program_.constants()[e.slot].value;
      case Expr::Kind::kArrayLit: {
        Array arr;
        arr.reserve(e.children.size());
        for (const auto& c : e.children) {
          arr.push_back(AsInt(Eval(*c, frame), e.line));
        }
        return arr;
      }
      case Expr::Kind::kIndex:
        return EvalIndex(e, frame);
      case Expr::Kind::kCall:
        return EvalCall(e, frame);
      case Expr::Kind::kUnary: {
        Value v = Eval(*e.children[0], frame);
        if (e.unary_op == UnaryOp::kNot) return !AsBool(v, e.line);
        return Wrap(0 - static_cast<uint64_t>(AsInt(v, e.line)));
      }
      case Expr::Kind::kBinary:
        return EvalBinary(e, frame);
    }
    RuntimeError(e.line, "unknown expression");
  }

  Value EvalIndex(const Expr& e, std::vector<Value>& frame) {
    const Expr& base = *e.children[0];
    int64_t value = 0;
    if (base.kind == Expr::Kind::kLocal) {
      // Avoid copying the whole array for a local read.
      Tick(base.line);
      const auto* arr = std::get_if<Array>(&frame[base.slot]);
      if (!arr) RuntimeError(e.line, "'" + base.name + "' is not an array");
      int64_t index = AsInt(Eval(*e.children[1], frame), e.line);
      arr = std::get_if<Array>(&frame[base.slot]);
      CheckIndex(*arr, index, e.line);
      value = (*arr)[index];
    } else {
      Value container = Eval(base, frame);
      auto* arr = std::get_if<Array>(&container);
      if (!arr) RuntimeError(e.line, "indexing a non-array value");
      int64_t index = AsInt(Eval(*e.children[1], frame), e.line);
      CheckIndex(*arr, index, e.line);
      value = (*arr)[index];
    }
    return value;
  }

  Value EvalCall(const Expr& e, std::vector<Value>& frame) {
    if (e.builtin == Builtin::kLen) {
      Value v = Eval(*e.children[0], frame);
      auto* arr = std::get_if<Array>(&v);
      if (!arr) RuntimeError(e.line, "len() of non-array");
      return static_cast<int64_t>(arr->size());
    }
    if (e.builtin == Builtin::kArray) {
      int64_t n = AsInt(Eval(*e.children[0], frame), e.line);
      if (n < 0 || n > 1'000'000) {
        RuntimeError(e.line, "invalid array size " + std::to_string(n));
      }
      return Array(static_cast<size_t>(n), 0);
    }
    const FunctionDef& fn = program_.functions()[e.slot];
    std::vector<Value> callee(fn.num_slots);
    for (size_t i = 0; i < e.children.size(); ++i) {
      callee[i] = Eval(*e.children[i], frame);
    }
    if (depth_ >= kMaxCallDepth) {
      RuntimeError(e.line, "call depth limit exceeded");
    }
    ++depth_;
    Value ret = int64_t{0};
    ExecBlock(fn.body, callee, &ret);
    --depth_;
    return ret;
  }

  Value EvalBinary(const Expr& e, std::vector<Value>& frame) {
    const int line = e.line;
    if (e.binary_op == BinaryOp::kAnd) {
      if (!AsBool(Eval(*e.children[0], frame), line)) return false;
      return AsBool(Eval(*e.children[1], frame), line);
    }
    if (e.binary_op == BinaryOp::kOr) {
      if (AsBool(Eval(*e.children[0], frame), line)) return true;
      return AsBool(Eval(*e.children[1], frame), line);
    }
    Value lhs = Eval(*e.children[0], frame);
    Value rhs = Eval(*e.children[1], frame);
    if (e.binary_op == BinaryOp::kEq || e.binary_op == BinaryOp::kNe) {
      if (lhs.index() != rhs.index()) {
        RuntimeError(line, "comparing " + std::string(TypeName(lhs)) +
                               " with " + std::string(TypeName(rhs)));
      }
      return (lhs == rhs) == (e.binary_op == BinaryOp::kEq);
    }
    int64_t a = AsInt(lhs, line);
    int64_t b = AsInt(rhs, line);
    uint64_t ua = static_cast<uint64_t>(a);
    uint64_t ub = static_cast<uint64_t>(b);
    switch (e.binary_op) {
      case BinaryOp::kAdd: return Wrap(ua + ub);
      case BinaryOp::kSub: return Wrap(ua - ub);
      case BinaryOp::kMul: return Wrap(ua * ub);
      case BinaryOp::kDiv:
      case BinaryOp::kMod:
        if (b == 0) RuntimeError(line, "division by zero");
        if (b == -1) {
          // INT64_MIN / -1 wraps; the remainder is always zero.
          return e.binary_op == BinaryOp::kDiv ? Wrap(0 - ua) : int64_t{0};
        }
        return e.binary_op == BinaryOp::kDiv ? a / b : a % b;
      case BinaryOp::kLt: return a < b;
      case BinaryOp::kLe: return a <= b;
      case BinaryOp::kGt: return a > b;
      case BinaryOp::kGe: return a >= b;
      default: break;
    }
    RuntimeError(line, "unsupported operator");
  }

  const Program& program_;
  uint64_t budget_;
  ExecutionObserver* observer_;
  uint64_t steps_ = 0;
  int depth_ = 0;
  std::vector<char> hit_;
};

}  // namespace

std::string_view TestStatusName(TestStatus status) {
  switch (status) {
    case TestStatus::kPass: return "pass";
    case TestStatus::kAssertFail: return "assert_fail";
    case TestStatus::kRuntimeError: return "runtime_error";
    case TestStatus::kBudgetExceeded: return "budget_exceeded";
  }
  return "unknown";
}

TestOutcome RunTest(const Program& program, std::string_view test_name,
                    uint64_t budget, ExecutionObserver* observer) {
  if (budget == 0) throw std::invalid_argument("step budget must be positive");
  const TestDef* test = program.FindTest(test_name);
  if (!test) {
    throw UnknownTestError("unknown test '" + std::string(test_name) + "'");
  }
  return Interpreter(program, budget, observer).Run(*test);
}

std::vector<std::string> ListTests(const Program& program) {
  std::vector<std::string> names;
  for (const auto& t : program.tests()) names.push_back(t.name);
  return names;
}

}  // namespace pmt
