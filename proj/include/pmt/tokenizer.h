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

#ifndef PMT_TOKENIZER_H_
#define PMT_TOKENIZER_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace pmt {

struct TokenizerOptions {
  // Identifiers longer than this are split into sub-tokens on `_` and
  // camelCase boundaries. 0 splits every identifier.
  size_t max_whole_identifier = 16;
};

// MiniLang lexical tokens with long-identifier splitting. Never throws:
// bytes outside the language become single-byte tokens.
std::vector<std::string> Tokenize(std::string_view text,
                                  const TokenizerOptions& options = {});

std::vector<std::string> SplitIdentifier(std::string_view identifier);

}  // namespace pmt

#endif  // PMT_TOKENIZER_H_
