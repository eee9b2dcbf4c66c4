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

#include "hullcheck/checklang/lexer.h"

#include <cctype>
#include <limits>
#include <set>

#include "hullcheck/error.h"

namespace hullcheck::checklang {

namespace {

const std::set<std::string>& Keywords() {
  static const std::set<std::string> kKeywords = {
      "func",  "int",    "array",  "alloc",  "resize", "len",
      "if",    "else",   "while",  "for",    "switch", "case",
      "default", "break", "return", "input", "print",
  };
  return kKeywords;
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> Run() {
    std::vector<Token> out;
    while (true) {
      SkipSpaceAndComments();
      Token t;
      t.line = line_;
      t.column = column_;
      if (pos_ >= src_.size()) {
        t.kind = Tok::kEnd;
        out.push_back(t);
        return out;
      }
      char c = src_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                src_[pos_] == '_')) {
          Advance();
        }
        t.text = std::string(src_.substr(start, pos_ - start));
        t.kind = Keywords().count(t.text) ? Tok::kKeyword : Tok::kIdent;
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        LexNumber(&t);
      } else if (c == '\'') {
        LexChar(&t);
      } else {
        LexPunct(&t);
      }
      out.push_back(std::move(t));
    }
  }

 private:
  void Advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  [[noreturn]] void Fail(const std::string& message) {
    throw SyntaxError(message, line_, column_);
  }

  void SkipSpaceAndComments() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        Advance();
      } else if (src_.substr(pos_, 2) == "//") {
        while (pos_ < src_.size() && src_[pos_] != '\n') Advance();
      } else if (src_.substr(pos_, 2) == "/*") {
        int line = line_, column = column_;
        Advance();
        Advance();
        while (pos_ < src_.size() && src_.substr(pos_, 2) != "*/") Advance();
        if (pos_ >= src_.size()) {
          throw SyntaxError("unterminated comment", line, column);
        }
        Advance();
        Advance();
      } else {
        return;
      }
    }
  }

  void LexNumber(Token* t) {
    uint64_t value = 0;
    const uint64_t limit = std::numeric_limits<int64_t>::max();
    while (pos_ < src_.size() &&
           std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
      uint64_t digit = src_[pos_] - '0';
      if (value > (limit - digit) / 10) Fail("integer literal too large");
      value = value * 10 + digit;
      Advance();
    }
    t->kind = Tok::kInt;
    t->value = static_cast<int64_t>(value);
  }

  void LexChar(Token* t) {
    Advance();
    if (pos_ >= src_.size()) Fail("unterminated character literal");
    char c = src_[pos_];
    if (c == '\\') {
      Advance();
      if (pos_ >= src_.size()) Fail("unterminated character literal");
      switch (src_[pos_]) {
        case 'n': c = '\n'; break;
        case 't': c = '\t'; break;
        case '0': c = '\0'; break;
        case '\\': c = '\\'; break;
        case '\'': c = '\''; break;
        default: Fail("unknown escape sequence");
      }
    }
    Advance();
    if (pos_ >= src_.size() || src_[pos_] != '\'') {
      Fail("unterminated character literal");
    }
    Advance();
    t->kind = Tok::kInt;
    t->value = static_cast<unsigned char>(c);
  }

  void LexPunct(Token* t) {
    static const char* const kTwo[] = {"<=", ">=", "==", "!=", "&&", "||"};
    for (const char* two : kTwo) {
      if (src_.substr(pos_, 2) == two) {
        t->kind = Tok::kPunct;
        t->text = two;
        Advance();
        Advance();
        return;
      }
    }
    static const std::string kOne = "(){}[]<>=+-*/%!,;:";
    char c = src_[pos_];
    if (kOne.find(c) == std::string::npos) {
      Fail(std::string("unexpected character '") + c + "'");
    }
    t->kind = Tok::kPunct;
    t->text = std::string(1, c);
    Advance();
  }

  std::string_view src_;
  size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

}  // namespace

std::vector<Token> Lex(std::string_view source) { return Lexer(source).Run(); }

}  // namespace hullcheck::checklang
