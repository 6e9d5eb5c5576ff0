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

#include "pmt/lexer.h"

#include <array>
#include <cctype>

namespace pmt {

namespace {

constexpr std::array<std::string_view, 11> kKeywords = {
    "fn",   "test",   "const", "let",    "if",   "else",
    "while", "return", "true",  "false", "assert"};

// Longest match first.
constexpr std::array<std::string_view, 23> kSymbols = {
    "==", "!=", "<=", ">=", "&&", "||", "+", "-", "*", "/", "%", "<",
    ">",  "!",  "=",  "(",  ")",  "{",  "}", "[", "]", ",", ";"};

bool IsIdentStart(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool IsIdentChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

}  // namespace

SyntaxError::SyntaxError(int line, int column, const std::string& message)
    : std::runtime_error("syntax error at line " + std::to_string(line) +
                         ", column " + std::to_string(column) + ": " +
                         message),
      line_(line),
      column_(column) {}

bool IsKeyword(std::string_view word) {
  for (auto k : kKeywords) {
    if (k == word) return true;
  }
  // assert_eq is lexed as an identifier-shaped keyword.
  return word == "assert_eq";
}

std::vector<Token> Lex(std::string_view source, bool lenient) {
  std::vector<Token> tokens;
  size_t pos = 0;
  int line = 1;
  size_t line_start = 0;
  while (pos < source.size()) {
    char c = source[pos];
    if (c == '\n') {
      ++pos;
      ++line;
      line_start = pos;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++pos;
      continue;
    }
    if (c == '/' && pos + 1 < source.size() && source[pos + 1] == '/') {
      while (pos < source.size() && source[pos] != '\n') ++pos;
      continue;
    }
    Token tok;
    tok.line = line;
    tok.column = static_cast<int>(pos - line_start) + 1;
    size_t start = pos;
    if (IsIdentStart(c)) {
      while (pos < source.size() && IsIdentChar(source[pos])) ++pos;
      tok.text = std::string(source.substr(start, pos - start));
      tok.kind = IsKeyword(tok.text) ? TokenKind::kKeyword
                                     : TokenKind::kIdentifier;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      while (pos < source.size() &&
             std::isdigit(static_cast<unsigned char>(source[pos]))) {
        ++pos;
      }
      if (!lenient && pos < source.size() && IsIdentStart(source[pos])) {
        throw SyntaxError(line, tok.column, "malformed integer literal");
      }
      tok.text = std::string(source.substr(start, pos - start));
      tok.kind = TokenKind::kInteger;
    } else {
      bool matched = false;
      for (auto sym : kSymbols) {
        if (source.substr(pos, sym.size()) == sym) {
          tok.text = std::string(sym);
          tok.kind = TokenKind::kSymbol;
          pos += sym.size();
          matched = true;
          break;
        }
      }
      if (!matched && lenient) {
        tok.text = std::string(1, c);
        tok.kind = TokenKind::kSymbol;
        ++pos;
      } else if (!matched) {
        throw SyntaxError(line, tok.column,
                          std::string("unexpected character '") + c + "'");
      }
    }
    tok.span = {start, pos};
    tokens.push_back(std::move(tok));
  }
  Token end;
  end.kind = TokenKind::kEnd;
  end.span = {source.size(), source.size()};
  end.line = line;
  end.column = static_cast<int>(source.size() - line_start) + 1;
  tokens.push_back(std::move(end));
  return tokens;
}

std::vector<std::string> LexTexts(std::string_view source) {
  std::vector<std::string> out;
  for (auto& tok : Lex(source)) {
    if (tok.kind != TokenKind::kEnd) out.push_back(std::move(tok.text));
  }
  return out;
}

}  // namespace pmt
