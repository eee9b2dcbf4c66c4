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

#include "hullcheck/checklang/parser.h"

#include <utility>

#include "hullcheck/checklang/lexer.h"
#include "hullcheck/error.h"

namespace hullcheck::checklang {

namespace {

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Program Run() {
    while (!AtEnd()) {
      Expect(Tok::kKeyword, "func");
      program_.functions.push_back(ParseFunction());
    }
    program_.num_arms = next_arm_;
    program_.loops.resize(next_loop_);
    return std::move(program_);
  }

 private:
  const Token& Peek(size_t ahead = 0) const {
    size_t i = std::min(pos_ + ahead, toks_.size() - 1);
    return toks_[i];
  }
  bool AtEnd() const { return Peek().kind == Tok::kEnd; }

  bool Is(Tok kind, const char* text) const {
    return Peek().kind == kind && Peek().text == text;
  }
  bool IsPunct(const char* text) const { return Is(Tok::kPunct, text); }
  bool IsKeyword(const char* text) const { return Is(Tok::kKeyword, text); }

  [[noreturn]] void FailAt(const Token& t, const std::string& message) {
    throw SyntaxError(message, t.line, t.column);
  }

  std::string Describe(const Token& t) const {
    switch (t.kind) {
      case Tok::kEnd: return "end of input";
      case Tok::kInt: return "integer " + std::to_string(t.value);
      default: return "'" + t.text + "'";
    }
  }

  Token Expect(Tok kind, const char* text) {
    if (!Is(kind, text)) {
      FailAt(Peek(), std::string("expected '") + text + "' but found " +
                         Describe(Peek()));
    }
    return toks_[pos_++];
  }
  Token ExpectPunct(const char* text) { return Expect(Tok::kPunct, text); }

  bool Accept(const char* punct) {
    if (!IsPunct(punct)) return false;
    ++pos_;
    return true;
  }

  Token ExpectIdent() {
    if (Peek().kind != Tok::kIdent) {
      FailAt(Peek(), "expected identifier but found " + Describe(Peek()));
    }
    return toks_[pos_++];
  }

  void ExpectArrayType() {
    Expect(Tok::kKeyword, "array");
    ExpectPunct("<");
    Expect(Tok::kKeyword, "int");
    ExpectPunct(">");
  }

  FunctionDef ParseFunction() {
    FunctionDef f;
    Token name = ExpectIdent();
    f.name = name.text;
    f.line = name.line;
    ExpectPunct("(");
    if (!IsPunct(")")) {
      do {
        Param p;
        p.line = Peek().line;
        if (IsKeyword("int")) {
          ++pos_;
          p.type = Type::kInt;
        } else if (IsKeyword("array")) {
          ExpectArrayType();
          p.type = Type::kArray;
          if (Accept("[")) {
            p.length_var = ExpectIdent().text;
            ExpectPunct("]");
          }
        } else {
          FailAt(Peek(), "expected parameter type but found " +
                             Describe(Peek()));
        }
        p.name = ExpectIdent().text;
        f.params.push_back(std::move(p));
      } while (Accept(","));
    }
    ExpectPunct(")");
    f.body = ParseBlock(-1);
    return f;
  }

  Block ParseBlock(int arm_id) {
    ExpectPunct("{");
    Block b;
    b.arm_id = arm_id;
    while (!IsPunct("}")) {
      if (AtEnd()) FailAt(Peek(), "expected '}' but found end of input");
      b.stmts.push_back(ParseStmt());
    }
    ExpectPunct("}");
    return b;
  }

  // Arm body: a block, or a single statement wrapped in one.
  Block ParseArm() {
    int arm_id = next_arm_++;
    if (IsPunct("{")) return ParseBlock(arm_id);
    Block b;
    b.arm_id = arm_id;
    b.stmts.push_back(ParseStmt());
    return b;
  }

  StmtPtr NewStmt(StmtKind kind, const Token& at) {
    auto s = std::make_unique<Stmt>();
    s->kind = kind;
    s->line = at.line;
    s->column = at.column;
    return s;
  }

  StmtPtr ParseStmt() {
    const Token start = Peek();
    if (start.kind == Tok::kKeyword) {
      const std::string& kw = start.text;
      if (kw == "int") {
        StmtPtr s = ParseIntDecl();
        ExpectPunct(";");
        return s;
      }
      if (kw == "array") {
        ExpectArrayType();
        auto s = NewStmt(StmtKind::kDeclArray, start);
        s->name = ExpectIdent().text;
        ExpectPunct("=");
        Expect(Tok::kKeyword, "alloc");
        ExpectPunct("(");
        s->value = ParseExpr();
        ExpectPunct(")");
        ExpectPunct(";");
        return s;
      }
      if (kw == "resize") {
        ++pos_;
        auto s = NewStmt(StmtKind::kResize, start);
        ExpectPunct("(");
        s->name = ExpectIdent().text;
        ExpectPunct(",");
        s->value = ParseExpr();
        ExpectPunct(")");
        ExpectPunct(";");
        return s;
      }
      if (kw == "input") {
        ++pos_;
        StmtPtr s;
        if (IsKeyword("int")) {
          ++pos_;
          s = NewStmt(StmtKind::kInputInt, start);
        } else {
          ExpectArrayType();
          s = NewStmt(StmtKind::kInputArray, start);
        }
        s->name = ExpectIdent().text;
        ExpectPunct(";");
        return s;
      }
      if (kw == "print") {
        ++pos_;
        auto s = NewStmt(StmtKind::kPrint, start);
        do {
          s->exprs.push_back(ParseExpr());
        } while (Accept(","));
        ExpectPunct(";");
        return s;
      }
      if (kw == "if") {
        ++pos_;
        auto s = NewStmt(StmtKind::kIf, start);
        ExpectPunct("(");
        s->value = ParseExpr();
        ExpectPunct(")");
        s->body = ParseArm();
        if (IsKeyword("else")) {
          ++pos_;
          s->has_else = true;
          s->else_body = ParseArm();
        }
        return s;
      }
      if (kw == "while") {
        ++pos_;
        auto s = NewStmt(StmtKind::kWhile, start);
        s->loop_id = next_loop_++;
        ExpectPunct("(");
        s->value = ParseExpr();
        ExpectPunct(")");
        s->body = ParseArm();
        return s;
      }
      if (kw == "for") {
        ++pos_;
        auto s = NewStmt(StmtKind::kFor, start);
        s->loop_id = next_loop_++;
        ExpectPunct("(");
        if (!IsPunct(";")) {
          s->init = IsKeyword("int") ? ParseIntDecl() : ParseSimpleAssign();
        }
        ExpectPunct(";");
        if (!IsPunct(";")) s->value = ParseExpr();
        ExpectPunct(";");
        if (!IsPunct(")")) s->update = ParseSimpleAssign();
        ExpectPunct(")");
        s->body = ParseArm();
        return s;
      }
      if (kw == "switch") {
        ++pos_;
        auto s = NewStmt(StmtKind::kSwitch, start);
        ExpectPunct("(");
        s->value = ParseExpr();
        ExpectPunct(")");
        ExpectPunct("{");
        bool seen_default = false;
        while (!IsPunct("}")) {
          SwitchCase c;
          c.line = Peek().line;
          if (IsKeyword("default")) {
            if (seen_default) FailAt(Peek(), "duplicate default label");
            ++pos_;
            seen_default = true;
            c.is_default = true;
          } else {
            Expect(Tok::kKeyword, "case");
            do {
              c.labels.push_back(ParseLabel());
            } while (Accept(","));
          }
          ExpectPunct(":");
          c.body.arm_id = next_arm_++;
          while (!IsKeyword("case") && !IsKeyword("default") &&
                 !IsPunct("}")) {
            if (AtEnd()) FailAt(Peek(), "expected '}' but found end of input");
            c.body.stmts.push_back(ParseStmt());
          }
          s->cases.push_back(std::move(c));
        }
        ExpectPunct("}");
        return s;
      }
      if (kw == "break") {
        ++pos_;
        ExpectPunct(";");
        return NewStmt(StmtKind::kBreak, start);
      }
      if (kw == "return") {
        ++pos_;
        auto s = NewStmt(StmtKind::kReturn, start);
        if (!IsPunct(";")) s->value = ParseExpr();
        ExpectPunct(";");
        return s;
      }
      FailAt(start, "unexpected " + Describe(start));
    }
    if (IsPunct("{")) {
      auto s = NewStmt(StmtKind::kBlock, start);
      s->body = ParseBlock(-1);
      return s;
    }
    if (start.kind == Tok::kIdent) {
      const Token& next = Peek(1);
      if (next.kind == Tok::kPunct && next.text == "(") {
        auto s = NewStmt(StmtKind::kExpr, start);
        s->value = ParseExpr();
        ExpectPunct(";");
        return s;
      }
      if (next.kind == Tok::kPunct && next.text == "[") {
        pos_ += 2;
        auto s = NewStmt(StmtKind::kArrayWrite, start);
        s->name = start.text;
        s->site = NewSite(start, true);
        s->index = ParseExpr();
        ExpectPunct("]");
        ExpectPunct("=");
        s->value = ParseExpr();
        ExpectPunct(";");
        return s;
      }
      StmtPtr s = ParseSimpleAssign();
      ExpectPunct(";");
      return s;
    }
    FailAt(start, "unexpected " + Describe(start));
  }

  StmtPtr ParseIntDecl() {
    const Token start = Expect(Tok::kKeyword, "int");
    auto s = NewStmt(StmtKind::kDeclInt, start);
    s->name = ExpectIdent().text;
    if (Accept("=")) s->value = ParseExpr();
    return s;
  }

  StmtPtr ParseSimpleAssign() {
    const Token name = ExpectIdent();
    auto s = NewStmt(StmtKind::kAssign, name);
    s->name = name.text;
    ExpectPunct("=");
    s->value = ParseExpr();
    return s;
  }

  int64_t ParseLabel() {
    bool negative = Accept("-");
    if (Peek().kind != Tok::kInt) {
      FailAt(Peek(), "expected case label but found " + Describe(Peek()));
    }
    int64_t v = toks_[pos_++].value;
    return negative ? -v : v;
  }

  int NewSite(const Token& at, bool is_write) {
    SiteInfo info;
    info.array = at.text;
    info.line = at.line;
    info.is_write = is_write;
    program_.sites.push_back(info);
    return static_cast<int>(program_.sites.size()) - 1;
  }

  ExprPtr NewExpr(ExprKind kind, const Token& at) {
    auto e = std::make_unique<Expr>();
    e->kind = kind;
    e->line = at.line;
    e->column = at.column;
    return e;
  }

  ExprPtr Binary(BinOp op, const Token& at, ExprPtr lhs, ExprPtr rhs) {
    auto e = NewExpr(ExprKind::kBinary, at);
    e->binop = op;
    e->args.push_back(std::move(lhs));
    e->args.push_back(std::move(rhs));
    return e;
  }

  ExprPtr ParseExpr() { return ParseOr(); }

  ExprPtr ParseOr() {
    ExprPtr lhs = ParseAnd();
    while (IsPunct("||")) {
      Token op = toks_[pos_++];
      lhs = Binary(BinOp::kOr, op, std::move(lhs), ParseAnd());
    }
    return lhs;
  }

  ExprPtr ParseAnd() {
    ExprPtr lhs = ParseEquality();
    while (IsPunct("&&")) {
      Token op = toks_[pos_++];
      lhs = Binary(BinOp::kAnd, op, std::move(lhs), ParseEquality());
    }
    return lhs;
  }

  ExprPtr ParseEquality() {
    ExprPtr lhs = ParseRelational();
    while (IsPunct("==") || IsPunct("!=")) {
      Token op = toks_[pos_++];
      lhs = Binary(op.text == "==" ? BinOp::kEq : BinOp::kNe, op,
                   std::move(lhs), ParseRelational());
    }
    return lhs;
  }

  ExprPtr ParseRelational() {
    ExprPtr lhs = ParseAdditive();
    while (IsPunct("<") || IsPunct("<=") || IsPunct(">") || IsPunct(">=")) {
      Token op = toks_[pos_++];
      BinOp bop = op.text == "<"    ? BinOp::kLt
                  : op.text == "<=" ? BinOp::kLe
                  : op.text == ">"  ? BinOp::kGt
                                    : BinOp::kGe;
      lhs = Binary(bop, op, std::move(lhs), ParseAdditive());
    }
    return lhs;
  }

  ExprPtr ParseAdditive() {
    ExprPtr lhs = ParseMultiplicative();
    while (IsPunct("+") || IsPunct("-")) {
      Token op = toks_[pos_++];
      lhs = Binary(op.text == "+" ? BinOp::kAdd : BinOp::kSub, op,
                   std::move(lhs), ParseMultiplicative());
    }
    return lhs;
  }

  ExprPtr ParseMultiplicative() {
    ExprPtr lhs = ParseUnary();
    while (IsPunct("*") || IsPunct("/") || IsPunct("%")) {
      Token op = toks_[pos_++];
      BinOp bop = op.text == "*"   ? BinOp::kMul
                  : op.text == "/" ? BinOp::kDiv
                                   : BinOp::kMod;
      lhs = Binary(bop, op, std::move(lhs), ParseUnary());
    }
    return lhs;
  }

  ExprPtr ParseUnary() {
    if (IsPunct("-") || IsPunct("!")) {
      Token op = toks_[pos_++];
      auto e = NewExpr(ExprKind::kUnary, op);
      e->unop = op.text == "-" ? UnOp::kNeg : UnOp::kNot;
      e->args.push_back(ParseUnary());
      return e;
    }
    return ParsePrimary();
  }

  ExprPtr ParsePrimary() {
    const Token t = Peek();
    if (t.kind == Tok::kInt) {
      ++pos_;
      auto e = NewExpr(ExprKind::kIntLit, t);
      e->value = t.value;
      return e;
    }
    if (IsKeyword("len")) {
      ++pos_;
      ExpectPunct("(");
      auto e = NewExpr(ExprKind::kLen, t);
      e->name = ExpectIdent().text;
      ExpectPunct(")");
      return e;
    }
    if (t.kind == Tok::kIdent) {
      ++pos_;
      if (Accept("(")) {
        auto e = NewExpr(ExprKind::kCall, t);
        e->name = t.text;
        if (!IsPunct(")")) {
          do {
            e->args.push_back(ParseExpr());
          } while (Accept(","));
        }
        ExpectPunct(")");
        return e;
      }
      if (Accept("[")) {
        auto e = NewExpr(ExprKind::kIndex, t);
        e->name = t.text;
        e->site = NewSite(t, false);
        e->args.push_back(ParseExpr());
        ExpectPunct("]");
        return e;
      }
      auto e = NewExpr(ExprKind::kVar, t);
      e->name = t.text;
      return e;
    }
    if (Accept("(")) {
      ExprPtr e = ParseExpr();
      ExpectPunct(")");
      return e;
    }
    FailAt(t, "expected expression but found " + Describe(t));
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
  Program program_;
  int next_arm_ = 0;
  int next_loop_ = 0;
};

}  // namespace

Program ParseSyntax(std::string_view source) {
  return Parser(Lex(source)).Run();
}

Program Parse(std::string_view source) {
  Program p = ParseSyntax(source);
  Resolve(&p);
  return p;
}

}  // namespace hullcheck::checklang
