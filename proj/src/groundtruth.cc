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

#include "pmt/groundtruth.h"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>

#include "pmt/hash.h"

namespace pmt {

std::string QualifiedTestId(std::string_view project, std::string_view name) {
  if (project.empty()) return std::string(name);
  return std::string(project) + "::" + std::string(name);
}

std::string_view TestNameFromId(std::string_view test_id) {
  auto pos = test_id.rfind("::");
  return pos == std::string_view::npos ? test_id : test_id.substr(pos + 2);
}

bool TestCoverage::Covers(int line) const {
  return std::binary_search(lines.begin(), lines.end(), line);
}

namespace {

std::string JoinNames(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& n : names) {
    if (!out.empty()) out += ", ";
    out += n;
  }
  return out;
}

}  // namespace

RedSuiteError::RedSuiteError(std::vector<std::string> failing)
    : std::runtime_error("test suite fails on the original program: " +
                         JoinNames(failing)),
      failing_(std::move(failing)) {}

CoverageMap BuildCoverage(const Program& program, uint64_t budget,
                          std::string_view project) {
  CoverageMap map;
  std::vector<std::string> failing;
  for (const auto& test : program.tests()) {
    TestOutcome outcome = RunTest(program, test.name, budget);
    std::string id = QualifiedTestId(project, test.name);
    if (!outcome.passed()) {
      failing.push_back(id + " (" + std::string(TestStatusName(outcome.status)) +
                        ")");
      continue;
    }
    map.test_order.push_back(id);
    map.tests[id] = {std::move(outcome.covered_lines), outcome.steps_used};
  }
  if (!failing.empty()) throw RedSuiteError(std::move(failing));
  return map;
}

std::vector<std::string> CoveringTests(const Mutant& mutant,
                                       const CoverageMap& coverage) {
  std::vector<std::string> out;
  for (const auto& id : coverage.test_order) {
    if (coverage.tests.at(id).Covers(mutant.line)) out.push_back(id);
  }
  return out;
}

KillMatrix::KillMatrix(std::vector<KillEntry> entries)
    : entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(),
            [](const KillEntry& a, const KillEntry& b) {
              return std::tie(a.mutant_id, a.test_id) <
                     std::tie(b.mutant_id, b.test_id);
            });
  for (size_t i = 0; i < entries_.size(); ++i) {
    if (i > 0 && entries_[i].mutant_id == entries_[i - 1].mutant_id &&
        entries_[i].test_id == entries_[i - 1].test_id) {
      throw std::invalid_argument("duplicate kill matrix entry (" +
                                  entries_[i].mutant_id + ", " +
                                  entries_[i].test_id + ")");
    }
    auto [it, inserted] = rows_.try_emplace(entries_[i].mutant_id, i, i + 1);
    if (!inserted) it->second.second = i + 1;
  }
}

const KillEntry* KillMatrix::Find(std::string_view mutant_id,
                                  std::string_view test_id) const {
  auto it = rows_.find(mutant_id);
  if (it == rows_.end()) return nullptr;
  for (size_t i = it->second.first; i < it->second.second; ++i) {
    if (entries_[i].test_id == test_id) return &entries_[i];
  }
  return nullptr;
}

std::vector<const KillEntry*> KillMatrix::Row(std::string_view mutant_id) const {
  std::vector<const KillEntry*> row;
  auto it = rows_.find(mutant_id);
  if (it == rows_.end()) return row;
  for (size_t i = it->second.first; i < it->second.second; ++i) {
    row.push_back(&entries_[i]);
  }
  return row;
}

std::vector<std::string> KillMatrix::MutantIds() const {
  std::vector<std::string> ids;
  ids.reserve(rows_.size());
  for (const auto& [id, range] : rows_) ids.push_back(id);
  return ids;
}

KillMatrix KillMatrix::Subset(const std::vector<std::string>& mutant_ids) const {
  std::vector<KillEntry> out;
  for (const auto& id : mutant_ids) {
    for (const KillEntry* e : Row(id)) out.push_back(*e);
  }
  return KillMatrix(std::move(out));
}

KillMatrix KillMatrix::Merge(const std::vector<KillMatrix>& parts) {
  std::vector<KillEntry> all;
  for (const auto& p : parts) {
    all.insert(all.end(), p.entries().begin(), p.entries().end());
  }
  return KillMatrix(std::move(all));
}

KillMatrix BuildKillMatrix(const Program& program,
                           const std::vector<Mutant>& mutants,
                           const CoverageMap& coverage, uint64_t budget,
                           int jobs) {
  std::vector<std::vector<KillEntry>> rows(mutants.size());
  std::atomic<size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};

  auto worker = [&] {
    while (!failed.load()) {
      size_t i = next.fetch_add(1);
      if (i >= mutants.size()) return;
      try {
        const Mutant& m = mutants[i];
        std::vector<std::string> tests = CoveringTests(m, coverage);
        if (tests.empty()) continue;
        Program mutated = Parse(ApplyMutant(program.source_text(), m));
        for (const auto& test_id : tests) {
          TestOutcome outcome =
              RunTest(mutated, TestNameFromId(test_id), budget);
          rows[i].push_back({m.id, test_id, !outcome.passed(),
                             outcome.steps_used, outcome.status});
        }
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
        return;
      }
    }
  };

  jobs = std::max(1, jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (int t = 0; t < jobs; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<KillEntry> entries;
  for (auto& row : rows) {
    for (auto& e : row) entries.push_back(std::move(e));
  }
  return KillMatrix(std::move(entries));
}

bool TruthSuiteVerdict(const KillMatrix& matrix, std::string_view mutant_id) {
  auto row = matrix.Row(mutant_id);
  if (row.empty()) {
    throw std::invalid_argument("mutant " + std::string(mutant_id) +
                                " has no covering tests");
  }
  return std::any_of(row.begin(), row.end(),
                     [](const KillEntry* e) { return e->detected; });
}

nlohmann::json KillEntryToJson(const KillEntry& e) {
  return nlohmann::json{{"mutant_id", e.mutant_id},
                        {"test_id", e.test_id},
                        {"detected", e.detected},
                        {"cost_steps", e.cost_steps},
                        {"status", TestStatusName(e.status)}};
}

KillEntry KillEntryFromJson(const nlohmann::json& j) {
  KillEntry e;
  e.mutant_id = j.at("mutant_id").get<std::string>();
  e.test_id = j.at("test_id").get<std::string>();
  e.detected = j.at("detected").get<bool>();
  e.cost_steps = j.at("cost_steps").get<uint64_t>();
  std::string status = j.value("status", e.detected ? "assert_fail" : "pass");
  for (auto s : {TestStatus::kPass, TestStatus::kAssertFail,
                 TestStatus::kRuntimeError, TestStatus::kBudgetExceeded}) {
    if (TestStatusName(s) == status) e.status = s;
  }
  return e;
}

nlohmann::json CoverageToJson(const CoverageMap& coverage) {
  nlohmann::json j = nlohmann::json::object();
  int order = 0;
  for (const auto& id : coverage.test_order) {
    const auto& tc = coverage.tests.at(id);
    j[id] = {{"lines", tc.lines}, {"cost_steps", tc.cost_steps},
             {"order", order++}};
  }
  return j;
}

CoverageMap CoverageFromJson(const nlohmann::json& j) {
  // Objects come back key-sorted; "order" restores declaration order.
  CoverageMap map;
  std::vector<std::pair<int, std::string>> ordered;
  for (const auto& [id, value] : j.items()) {
    if (id == kLineageKey) continue;
    ordered.emplace_back(value.value("order", 0), id);
    map.tests[id] = {value.at("lines").get<std::vector<int>>(),
                     value.at("cost_steps").get<uint64_t>()};
  }
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [order, id] : ordered) map.test_order.push_back(std::move(id));
  return map;
}

}  // namespace pmt
