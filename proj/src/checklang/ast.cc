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

#include "hullcheck/checklang/ast.h"

namespace hullcheck::checklang {

const char* BinOpText(BinOp op) {
  switch (op) {
    case BinOp::kAdd: return "+";
    case BinOp::kSub: return "-";
    case BinOp::kMul: return "*";
    case BinOp::kDiv: return "/";
    case BinOp::kMod: return "%";
    case BinOp::kLt: return "<";
    case BinOp::kLe: return "<=";
    case BinOp::kGt: return ">";
    case BinOp::kGe: return ">=";
    case BinOp::kEq: return "==";
    case BinOp::kNe: return "!=";
    case BinOp::kAnd: return "&&";
    case BinOp::kOr: return "||";
  }
  return "?";
}

ExprPtr Expr::Clone() const {
  auto e = std::make_unique<Expr>();
  e->kind = kind;
  e->line = line;
  e->column = column;
  e->value = value;
  e->name = name;
  e->unop = unop;
  e->binop = binop;
  for (const ExprPtr& a : args) e->args.push_back(a->Clone());
  e->site = site;
  e->slot = slot;
  e->type = type;
  return e;
}

Block Block::Clone() const {
  Block b;
  b.arm_id = arm_id;
  for (const StmtPtr& s : stmts) b.stmts.push_back(s->Clone());
  return b;
}

StmtPtr Stmt::Clone() const {
  auto s = std::make_unique<Stmt>();
  s->kind = kind;
  s->line = line;
  s->column = column;
  s->name = name;
  s->slot = slot;
  s->site = site;
  if (index) s->index = index->Clone();
  if (value) s->value = value->Clone();
  for (const ExprPtr& e : exprs) s->exprs.push_back(e->Clone());
  s->body = body.Clone();
  s->else_body = else_body.Clone();
  s->has_else = has_else;
  if (init) s->init = init->Clone();
  if (update) s->update = update->Clone();
  for (const SwitchCase& c : cases) {
    SwitchCase copy;
    copy.labels = c.labels;
    copy.is_default = c.is_default;
    copy.line = c.line;
    copy.body = c.body.Clone();
    s->cases.push_back(std::move(copy));
  }
  s->loop_id = loop_id;
  return s;
}

FunctionDef FunctionDef::Clone() const {
  FunctionDef f;
  f.name = name;
  f.line = line;
  f.params = params;
  f.body = body.Clone();
  f.slots = slots;
  f.trip_counters = trip_counters;
  return f;
}

int FunctionDef::UniqueSlot(const std::string& var) const {
  int found = -1;
  for (size_t i = 0; i < slots.size(); ++i) {
    if (slots[i].name != var) continue;
    if (found >= 0) return -1;
    found = static_cast<int>(i);
  }
  return found;
}

const FunctionDef* Program::Find(const std::string& fname) const {
  for (const FunctionDef& f : functions) {
    if (f.name == fname) return &f;
  }
  return nullptr;
}

Program Program::Clone() const {
  Program p;
  for (const FunctionDef& f : functions) p.functions.push_back(f.Clone());
  p.sites = sites;
  p.loops = loops;
  p.num_arms = num_arms;
  return p;
}

}  // namespace hullcheck::checklang
