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

#include "pmt/tokenizer.h"

#include <cctype>

#include "pmt/lexer.h"

namespace pmt {

namespace {

bool IsUpper(char c) { return std::isupper(static_cast<unsigned char>(c)); }
bool IsLower(char c) { return std::islower(static_cast<unsigned char>(c)); }

}  // namespace

std::vector<std::string> SplitIdentifier(std::string_view ident) {
  std::vector<std::string> parts;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) parts.push_back(std::move(current));
    current.clear();
  };
  for (size_t i = 0; i < ident.size(); ++i) {
    char c = ident[i];
    if (c == '_') {
      flush();
      continue;
    }
    if (IsUpper(c) && !current.empty()) {
      char prev = current.back();
      bool next_lower = i + 1 < ident.size() && IsLower(ident[i + 1]);
      // fooBar -> foo|Bar, HTTPServer -> HTTP|Server
      if (!IsUpper(prev) || next_lower) flush();
    }
    current.push_back(c);
  }
  flush();
  if (parts.empty()) parts.emplace_back(ident);
  return parts;
}

std::vector<std::string> Tokenize(std::string_view text,
                                  const TokenizerOptions& options) {
  std::vector<std::string> out;
  for (auto& tok : Lex(text, /*lenient=*/true)) {
    if (tok.kind == TokenKind::kEnd) break;
    if (tok.kind == TokenKind::kIdentifier &&
        tok.text.size() > options.max_whole_identifier) {
      for (auto& part : SplitIdentifier(tok.text)) out.push_back(std::move(part));
    } else {
      out.push_back(std::move(tok.text));
    }
  }
  return out;
}

}  // namespace pmt
