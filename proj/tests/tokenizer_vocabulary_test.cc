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
#include "pmt/hash.h"
#include "pmt/tokenizer.h"
#include "pmt/vocabulary.h"

namespace pmt {
namespace {

using Tokens = std::vector<std::string>;

TEST(TokenizerTest, LexicalTokens) {
  EXPECT_EQ(Tokenize("a+1"), (Tokens{"a", "+", "1"}));
  EXPECT_EQ(Tokenize("if (x <= 10) { y = -x; }"),
            (Tokens{"if", "(", "x", "<=", "10", ")", "{", "y", "=", "-", "x",
                    ";", "}"}));
}

TEST(TokenizerTest, ShortIdentifiersStayWhole) {
  EXPECT_EQ(Tokenize("testNextHour"), (Tokens{"testNextHour"}));
  TokenizerOptions split_all;
  split_all.max_whole_identifier = 0;
  EXPECT_EQ(Tokenize("testNextHour", split_all),
            (Tokens{"test", "Next", "Hour"}));
}

TEST(TokenizerTest, LongIdentifiersSplit) {
  EXPECT_EQ(Tokenize("LAST_HOUR_IN_DAY"), (Tokens{"LAST_HOUR_IN_DAY"}));
  EXPECT_EQ(Tokenize("hours_between_span"),
            (Tokens{"hours", "between", "span"}));
  EXPECT_EQ(SplitIdentifier("parseHTTPRequestLine"),
            (Tokens{"parse", "HTTP", "Request", "Line"}));
}

TEST(TokenizerTest, NeverThrows) {
  EXPECT_EQ(Tokenize("a $ b"), (Tokens{"a", "$", "b"}));
  EXPECT_EQ(Tokenize("// only a comment"), Tokens{});
}

TEST(VocabularyTest, ReservedIds) {
  Vocabulary v;
  EXPECT_EQ(v.size(), 7u);
  EXPECT_EQ(v.Id("<PAD>"), Vocabulary::kPad);
  EXPECT_EQ(v.Id("<UNK>"), Vocabulary::kUnk);
  EXPECT_EQ(v.Id("<CLS>"), Vocabulary::kCls);
  EXPECT_EQ(v.Id("<SEP>"), Vocabulary::kSep);
  EXPECT_EQ(v.Id("<BEFORE>"), Vocabulary::kBefore);
  EXPECT_EQ(v.Id("<AFTER>"), Vocabulary::kAfter);
  EXPECT_EQ(v.Id("<ENDDIFF>"), Vocabulary::kEndDiff);
  EXPECT_EQ(v.Id("nothing"), Vocabulary::kUnk);
}

TEST(VocabularyTest, EmptyCorpusGivesReservedOnly) {
  EXPECT_EQ(Vocabulary::Build({}, 100).size(), 7u);
  EXPECT_THROW(Vocabulary::Build({}, 7), std::invalid_argument);
}

TEST(VocabularyTest, CapacityAndTieBreak) {
  std::vector<Tokens> corpus = {{"b", "a", "c", "c"}, {"a"}};
  Vocabulary ten = Vocabulary::Build(corpus, 10);
  EXPECT_EQ(ten.size(), 10u);
  // Frequencies a=2, c=2, b=1: ties go to the lexicographically smaller.
  EXPECT_EQ(ten.Token(7), "a");
  EXPECT_EQ(ten.Token(8), "c");
  EXPECT_EQ(ten.Token(9), "b");
  Vocabulary eight = Vocabulary::Build(corpus, 8);
  EXPECT_EQ(eight.size(), 8u);
  EXPECT_TRUE(eight.Contains("a"));
  EXPECT_FALSE(eight.Contains("c"));
}

TEST(VocabularyTest, DeterministicAndSerializable) {
  std::vector<Tokens> corpus;
  for (const char* f : {"hour", "bank", "text"}) {
    corpus.push_back(Tokenize(ReadFile(std::string(PMT_CORPUS_DIR) + "/" + f +
                                       ".mini")));
  }
  Vocabulary a = Vocabulary::Build(corpus, 2048);
  Vocabulary b = Vocabulary::Build(corpus, 2048);
  EXPECT_EQ(a.ToJson().dump(), b.ToJson().dump());
  EXPECT_EQ(a.Hash(), b.Hash());
  Vocabulary back = Vocabulary::FromJson(a.ToJson());
  EXPECT_EQ(back.Hash(), a.Hash());
  for (size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a.Id(a.Token(static_cast<int>(i))), static_cast<int>(i));
  }
  EXPECT_THROW(a.Token(static_cast<int>(a.size())), std::out_of_range);
}

TEST(VocabularyTest, FromJsonValidates) {
  nlohmann::json bad = Vocabulary().ToJson();
  bad["<CLS>"] = 5;
  EXPECT_ANY_THROW(Vocabulary::FromJson(bad));
  nlohmann::json gap = Vocabulary().ToJson();
  gap["x"] = 9;
  EXPECT_ANY_THROW(Vocabulary::FromJson(gap));
  nlohmann::json with_lineage = Vocabulary().ToJson();
  with_lineage[kLineageKey] = {{"corpus", "abc"}};
  EXPECT_EQ(Vocabulary::FromJson(with_lineage).size(), 7u);
}

}  // namespace
}  // namespace pmt
