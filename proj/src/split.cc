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

#include "pmt/split.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "pmt/random.h"

namespace pmt {

std::string_view SplitModeName(SplitMode mode) {
  return mode == SplitMode::kSameProject ? "same_project" : "cross_project";
}

std::optional<SplitMode> SplitModeFromName(std::string_view name) {
  if (name == "same_project" || name == "same-project") {
    return SplitMode::kSameProject;
  }
  if (name == "cross_project" || name == "cross-project") {
    return SplitMode::kCrossProject;
  }
  return std::nullopt;
}

std::string_view SplitPartName(SplitPart part) {
  switch (part) {
    case SplitPart::kTrain:
      return "train";
    case SplitPart::kVal:
      return "val";
    case SplitPart::kTest:
      return "test";
  }
  return "?";
}

std::optional<SplitPart> SplitPartFromName(std::string_view name) {
  for (SplitPart p : {SplitPart::kTrain, SplitPart::kVal, SplitPart::kTest}) {
    if (SplitPartName(p) == name) return p;
  }
  return std::nullopt;
}

void SplitSpec::Validate() const {
  double sum = 0;
  for (double r : ratios) {
    if (r < 0) throw SplitError("split ratios must be non-negative");
    sum += r;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw SplitError("split ratios must sum to 1");
}

std::array<size_t, 3> CutSizes(size_t n, const std::array<double, 3>& ratios) {
  auto train = static_cast<size_t>(std::llround(n * ratios[0]));
  auto val = static_cast<size_t>(std::llround(n * ratios[1]));
  train = std::min(train, n);
  val = std::min(val, n - train);
  return {train, val, n - train - val};
}

SplitResult SplitMutants(const std::vector<Mutant>& mutants,
                         const SplitSpec& spec, uint64_t seed) {
  spec.Validate();
  std::map<std::string, std::string> project_of;
  for (const auto& m : mutants) project_of[m.id] = m.project;

  std::map<std::string, SplitPart> unit_part;
  if (spec.mode == SplitMode::kCrossProject && !spec.assignment.empty()) {
    for (const auto& [id, project] : project_of) {
      auto it = spec.assignment.find(project);
      if (it == spec.assignment.end()) {
        throw SplitError("project '" + project + "' has no split assignment");
      }
      unit_part[project] = it->second;
    }
  } else {
    std::vector<std::string> units;
    if (spec.mode == SplitMode::kSameProject) {
      for (const auto& kv : project_of) units.push_back(kv.first);
    } else {
      std::set<std::string> projects;
      for (const auto& kv : project_of) projects.insert(kv.second);
      units.assign(projects.begin(), projects.end());
    }
    Rng rng(seed);
    Shuffle(units, rng);
    auto sizes = CutSizes(units.size(), spec.ratios);
    size_t k = 0;
    for (size_t part = 0; part < 3; ++part) {
      for (size_t i = 0; i < sizes[part]; ++i) {
        unit_part[units[k++]] = static_cast<SplitPart>(part);
      }
    }
  }

  SplitResult result;
  for (const auto& [id, project] : project_of) {
    SplitPart p = unit_part.at(spec.mode == SplitMode::kSameProject ? id
                                                                    : project);
    result.part_of[id] = p;
    result.mutant_ids[static_cast<size_t>(p)].push_back(id);
  }
  for (SplitPart p : {SplitPart::kTrain, SplitPart::kVal, SplitPart::kTest}) {
    if (result.ids(p).empty()) {
      throw SplitError("too few " +
                       std::string(spec.mode == SplitMode::kSameProject
                                       ? "mutants"
                                       : "projects") +
                       " to populate the " + std::string(SplitPartName(p)) +
                       " split");
    }
  }
  return result;
}

std::array<std::vector<EncodedExample>, 3> PartitionExamples(
    const std::vector<EncodedExample>& examples, const SplitResult& split) {
  std::array<std::vector<EncodedExample>, 3> parts;
  for (const auto& ex : examples) {
    auto it = split.part_of.find(ex.mutant_id);
    if (it == split.part_of.end()) {
      throw SplitError("example for unknown mutant " + ex.mutant_id);
    }
    parts[static_cast<size_t>(it->second)].push_back(ex);
  }
  return parts;
}

}  // namespace pmt
