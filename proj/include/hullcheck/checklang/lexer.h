/*
 * Copyright (C) 2026 The hullcheck Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef HULLCHECK_CHECKLANG_LEXER_H_
#define HULLCHECK_CHECKLANG_LEXER_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace hullcheck::checklang {

enum class Tok {
  kEnd,
  kIdent,
  kInt,
  kKeyword,
  kPunct,
};

struct Token {
  Tok kind = Tok::kEnd;
  std::string text;
  int64_t value = 0;
  int line = 1;
  int column = 1;
};

// Splits source text into tokens; the last token is kEnd. Throws SyntaxError.
std::vector<Token> Lex(std::string_view source);

}  // namespace hullcheck::checklang

#endif  // HULLCHECK_CHECKLANG_LEXER_H_
