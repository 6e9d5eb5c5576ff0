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

#include <string>

#include "gtest/gtest.h"
#include "pmt/ast.h"
#include "pmt/groundtruth.h"
#include "pmt/hash.h"
#include "pmt/interpreter.h"
#include "pmt/mutation.h"

namespace pmt {
namespace {

const char kSmall[] =
    "fn f(a) {\n"              // 1
    "  return a + 1;\n"        // 2
    "}\n"                      // 3
    "fn g(a) {\n"              // 4
    "  return a * 2;\n"        // 5
    "}\n"                      // 6
    "fn unused(a) {\n"         // 7
    "  return a - 1;\n"        // 8
    "}\n"                      // 9
    "test tf {\n"              // 10
    "  assert_eq(f(1), 2);\n"  // 11
    "}\n"                      // 12
    "test tg {\n"              // 13
    "  assert(g(2) > 0);\n"    // 14
    "}\n"                      // 15
    "test tsc {\n"             // 16
    "  assert(true || g(1) == 1);\n"
    "}\n";

TEST(GroundTruthTest, CoverageFollowsExecution) {
  Program p = Parse(kSmall);
  CoverageMap cov = BuildCoverage(p, kDefaultStepBudget, "small");
  EXPECT_EQ(cov.test_order,
            (std::vector<std::string>{"small::tf", "small::tg", "small::tsc"}));
  EXPECT_EQ(cov.tests.at("small::tf").lines, (std::vector<int>{2, 11}));
  EXPECT_EQ(cov.tests.at("small::tg").lines, (std::vector<int>{5, 14}));
  // The right operand of || never runs, so g is not covered.
  EXPECT_FALSE(cov.tests.at("small::tsc").Covers(5));
  EXPECT_GT(cov.tests.at("small::tf").cost_steps, 0u);
}

TEST(GroundTruthTest, RedSuiteIsRejected) {
  Program p = Parse("fn f(a) { return a; } test ok { assert(true); } "
                    "test bad { assert_eq(f(1), 2); }");
  try {
    BuildCoverage(p, kDefaultStepBudget);
    FAIL();
  } catch (const RedSuiteError& e) {
    EXPECT_EQ(e.failing_tests(), (std::vector<std::string>{"bad (assert_fail)"}));
  }
}

TEST(GroundTruthTest, KillMatrixOnSmallProgram) {
  Program p = Parse(kSmall);
  auto mutants = GenerateMutants(p, "small");
  CoverageMap cov = BuildCoverage(p, kDefaultStepBudget, "small");
  KillMatrix m = BuildKillMatrix(p, mutants, cov, kDefaultStepBudget);
  for (const auto& mut : mutants) {
    auto covering = CoveringTests(mut, cov);
    auto row = m.Row(mut.id);
    ASSERT_EQ(row.size(), covering.size());
    if (mut.function == "unused") {
      EXPECT_TRUE(covering.empty());
      continue;
    }
    if (mut.function == "f") {
      // f(1) == 2 only holds for +, so every replacement is detected.
      EXPECT_TRUE(TruthSuiteVerdict(m, mut.id));
    }
    if (mut.function == "g" && mut.sub_operator == "+") {
      // g(2) = 4 either way.
      EXPECT_FALSE(TruthSuiteVerdict(m, mut.id));
    }
  }
}

TEST(GroundTruthTest, DetectionMatchesDirectExecution) {
  std::string source = ReadFile(PMT_CORPUS_DIR "/hour.mini");
  Program p = Parse(source);
  auto mutants = GenerateMutants(p, "hour");
  CoverageMap cov = BuildCoverage(p, kDefaultStepBudget, "hour");
  KillMatrix m = BuildKillMatrix(p, mutants, cov, kDefaultStepBudget);
  // Hand-check a handful of pairs against a fresh run on the mutated source.
  size_t checked = 0;
  for (const auto& e : m.entries()) {
    if (checked++ % 7 != 0) continue;
    const Mutant* mut = nullptr;
    for (const auto& x : mutants) {
      if (x.id == e.mutant_id) mut = &x;
    }
    ASSERT_NE(mut, nullptr);
    Program mp = Parse(ApplyMutant(source, *mut));
    TestOutcome o = RunTest(mp, TestNameFromId(e.test_id), kDefaultStepBudget);
    EXPECT_EQ(e.detected, !o.passed());
    EXPECT_EQ(e.status, o.status);
    EXPECT_EQ(e.cost_steps, o.steps_used);
  }
}

TEST(GroundTruthTest, JobsDoNotChangeTheMatrix) {
  std::string source = ReadFile(PMT_CORPUS_DIR "/arrays.mini");
  Program p = Parse(source);
  auto mutants = GenerateMutants(p, "arrays");
  CoverageMap cov = BuildCoverage(p, kDefaultStepBudget, "arrays");
  KillMatrix one = BuildKillMatrix(p, mutants, cov, kDefaultStepBudget, 1);
  KillMatrix four = BuildKillMatrix(p, mutants, cov, kDefaultStepBudget, 4);
  EXPECT_EQ(one.entries(), four.entries());
}

TEST(GroundTruthTest, SuiteVerdictIsOrOfRow) {
  KillMatrix m({{"m1", "t1", false, 3, TestStatus::kPass},
                {"m1", "t2", false, 3, TestStatus::kPass},
                {"m2", "t1", false, 3, TestStatus::kPass},
                {"m2", "t2", true, 9, TestStatus::kAssertFail}});
  EXPECT_FALSE(TruthSuiteVerdict(m, "m1"));
  EXPECT_TRUE(TruthSuiteVerdict(m, "m2"));
  EXPECT_THROW(TruthSuiteVerdict(m, "m3"), std::invalid_argument);
}

TEST(GroundTruthTest, MatrixRejectsDuplicatesAndSorts) {
  EXPECT_THROW(KillMatrix({{"m", "t", false, 0, TestStatus::kPass},
                           {"m", "t", true, 0, TestStatus::kAssertFail}}),
               std::invalid_argument);
  KillMatrix m({{"b", "t", false, 0, TestStatus::kPass},
                {"a", "u", false, 0, TestStatus::kPass},
                {"a", "t", false, 0, TestStatus::kPass}});
  EXPECT_EQ(m.entries()[0].mutant_id, "a");
  EXPECT_EQ(m.entries()[0].test_id, "t");
  EXPECT_EQ(m.MutantIds(), (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(m.Subset({"b"}).size(), 1u);
}

TEST(GroundTruthTest, JsonRoundTrips) {
  KillEntry e{"m", "p::t", true, 42, TestStatus::kBudgetExceeded};
  EXPECT_EQ(KillEntryFromJson(KillEntryToJson(e)), e);
  Program p = Parse(kSmall);
  CoverageMap cov = BuildCoverage(p, kDefaultStepBudget, "small");
  CoverageMap back = CoverageFromJson(CoverageToJson(cov));
  EXPECT_EQ(back.test_order, cov.test_order);
  EXPECT_EQ(back.tests.at("small::tf").lines, cov.tests.at("small::tf").lines);
}

TEST(GroundTruthTest, QualifiedIds) {
  EXPECT_EQ(QualifiedTestId("hour", "t"), "hour::t");
  EXPECT_EQ(QualifiedTestId("", "t"), "t");
  EXPECT_EQ(TestNameFromId("hour::t"), "t");
  EXPECT_EQ(TestNameFromId("t"), "t");
}

}  // namespace
}  // namespace pmt
