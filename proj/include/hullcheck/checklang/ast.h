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

#ifndef HULLCHECK_CHECKLANG_AST_H_
#define HULLCHECK_CHECKLANG_AST_H_

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace hullcheck::checklang {

enum class Type { kInt, kArray };

enum class ExprKind { kIntLit, kVar, kIndex, kLen, kCall, kUnary, kBinary };
enum class UnOp { kNeg, kNot };
enum class BinOp {
  kAdd, kSub, kMul, kDiv, kMod,
  kLt, kLe, kGt, kGe, kEq, kNe,
  kAnd, kOr,
};

const char* BinOpText(BinOp op);

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct Expr {
  ExprKind kind = ExprKind::kIntLit;
  int line = 0;
  int column = 0;
  int64_t value = 0;         // kIntLit
  std::string name;          // variable, array, or callee name
  UnOp unop = UnOp::kNeg;
  BinOp binop = BinOp::kAdd;
  // kIndex: {index}; kCall: arguments; kUnary: {operand}; kBinary: {lhs, rhs}.
  std::vector<ExprPtr> args;
  int site = -1;             // kIndex: array access site id
  int slot = -1;             // kVar, kIndex, kLen: resolved frame slot
  Type type = Type::kInt;    // kVar: type of the referenced variable

  ExprPtr Clone() const;
};

enum class StmtKind {
  kDeclInt,     // int name = value;
  kDeclArray,   // array<int> name = alloc(value);
  kAssign,      // name = value;
  kArrayWrite,  // name[index] = value;
  kResize,      // resize(name, value);
  kIf,
  kWhile,
  kFor,
  kSwitch,
  kBreak,
  kReturn,
  kExpr,        // call statement
  kInputInt,
  kInputArray,
  kPrint,
  kBlock,
  kTripCount,   // instrumentation: ++name
};

struct Stmt;
using StmtPtr = std::unique_ptr<Stmt>;

// A statement list. Arms (loop bodies, if/else branches, switch cases) carry
// a program-wide arm id; plain nested blocks use -1.
struct Block {
  int arm_id = -1;
  std::vector<StmtPtr> stmts;

  Block Clone() const;
};

struct SwitchCase {
  std::vector<int64_t> labels;
  bool is_default = false;
  int line = 0;
  Block body;
};

struct Stmt {
  StmtKind kind = StmtKind::kBlock;
  int line = 0;
  int column = 0;
  std::string name;
  int slot = -1;
  int site = -1;            // kArrayWrite
  ExprPtr index;            // kArrayWrite
  ExprPtr value;            // initializer, rhs, size, condition, call, return
  std::vector<ExprPtr> exprs;  // kPrint
  Block body;               // then-arm, loop body, plain block
  Block else_body;          // else-arm
  bool has_else = false;
  StmtPtr init;             // kFor
  StmtPtr update;           // kFor
  std::vector<SwitchCase> cases;
  int loop_id = -1;         // kWhile, kFor

  StmtPtr Clone() const;
};

struct Param {
  std::string name;
  Type type = Type::kInt;
  std::string length_var;   // array<int>[n]: name of the int param bound to len
  int line = 0;
  int slot = -1;
};

struct SlotInfo {
  std::string name;
  Type type = Type::kInt;
  int line = 0;
  bool is_param = false;
  bool is_trip_counter = false;
};

struct FunctionDef {
  std::string name;
  int line = 0;
  std::vector<Param> params;
  Block body;
  std::vector<SlotInfo> slots;
  std::vector<std::string> trip_counters;  // tc names in arm order

  FunctionDef Clone() const;
  // Slot of a uniquely declared name, or -1 when absent or shadowed.
  int UniqueSlot(const std::string& name) const;
};

struct SiteInfo {
  std::string func;
  std::string array;
  int slot = -1;
  int line = 0;
  int loop_id = -1;         // innermost enclosing loop, -1 if none
  bool is_write = false;
};

struct LoopInfo {
  std::string func;
  int line = 0;
  int parent = -1;          // enclosing loop id in the same function
  // Names visible at loop entry (innermost declaration wins).
  std::map<std::string, int> visible;
};

struct Program {
  std::vector<FunctionDef> functions;
  std::vector<SiteInfo> sites;
  std::vector<LoopInfo> loops;
  int num_arms = 0;

  const FunctionDef* Find(const std::string& name) const;
  Program Clone() const;
};

}  // namespace hullcheck::checklang

#endif  // HULLCHECK_CHECKLANG_AST_H_
