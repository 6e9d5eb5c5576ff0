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

#ifndef PMT_LEXER_H_
#define PMT_LEXER_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pmt {

// Half-open byte range [begin, end) into a source buffer.
struct SourceSpan {
  size_t begin = 0;
  size_t end = 0;

  size_t size() const { return end - begin; }
  bool Contains(const SourceSpan& other) const {
    return begin <= other.begin && other.end <= end;
  }
  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

enum class TokenKind { kIdentifier, kKeyword, kInteger, kSymbol, kEnd };

struct Token {
  TokenKind kind = TokenKind::kEnd;
  std::string text;
  SourceSpan span;
  int line = 1;    // 1-based
  int column = 1;  // 1-based, in bytes
};

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(int line, int column, const std::string& message);

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

bool IsKeyword(std::string_view word);

// Splits MiniLang source into tokens. `//` comments and whitespace are
// dropped. The returned vector always ends with a kEnd token. In lenient mode
// unknown bytes become single-byte kSymbol tokens instead of errors.
std::vector<Token> Lex(std::string_view source, bool lenient = false);

// Convenience: token texts only, without the trailing kEnd.
std::vector<std::string> LexTexts(std::string_view source);

}  // namespace pmt

#endif  // PMT_LEXER_H_
