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

#ifndef PMT_INTERPRETER_H_
#define PMT_INTERPRETER_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pmt/ast.h"

namespace pmt {

inline constexpr uint64_t kDefaultStepBudget = 1'000'000;

// Native recursion guard. Exceeding it is reported as a runtime error, the
// analogue of a stack overflow in the host language.
inline constexpr int kMaxCallDepth = 1000;

enum class TestStatus { kPass, kAssertFail, kRuntimeError, kBudgetExceeded };

std::string_view TestStatusName(TestStatus status);

struct TestOutcome {
  TestStatus status = TestStatus::kPass;
  uint64_t steps_used = 0;
  std::vector<int> covered_lines;  // sorted, unique, 1-based
  std::string message;

  bool passed() const { return status == TestStatus::kPass; }
  // Runtime proxy used by the time model.
  uint64_t wall_model_cost() const { return steps_used; }

  friend bool operator==(const TestOutcome&, const TestOutcome&) = default;
};

// Receives one callback per executed statement or evaluated expression.
class ExecutionObserver {
 public:
  virtual ~ExecutionObserver() = default;
  virtual void OnNode(int line) = 0;
};

class UnknownTestError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Runs a single test. Every statement and expression evaluation costs one
// step; the run stops with kBudgetExceeded once more than `budget` steps are
// needed. Deterministic, and safe to call concurrently on a shared program.
TestOutcome RunTest(const Program& program, std::string_view test_name,
                    uint64_t budget = kDefaultStepBudget,
                    ExecutionObserver* observer = nullptr);

std::vector<std::string> ListTests(const Program& program);

}  // namespace pmt

#endif  // PMT_INTERPRETER_H_
