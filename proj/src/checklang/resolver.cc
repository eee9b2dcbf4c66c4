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

#include <map>
#include <set>
#include <string>
#include <vector>

#include "hullcheck/checklang/parser.h"
#include "hullcheck/error.h"

namespace hullcheck::checklang {

namespace {

class Resolver {
 public:
  explicit Resolver(Program* program) : program_(program) {}

  void Run() {
    for (const FunctionDef& f : program_->functions) {
      if (!functions_.emplace(f.name, &f).second) {
        throw SyntaxError("duplicate function '" + f.name + "'", f.line, 1);
      }
    }
    for (FunctionDef& f : program_->functions) ResolveFunction(&f);
  }

 private:
  [[noreturn]] void Fail(const std::string& message, int line, int column) {
    throw SyntaxError(message, line, column);
  }

  void ResolveFunction(FunctionDef* f) {
    fn_ = f;
    scopes_.assign(1, {});
    loop_stack_.clear();
    breakable_depth_ = 0;
    for (Param& p : f->params) {
      if (scopes_.back().count(p.name)) {
        Fail("duplicate parameter '" + p.name + "'", p.line, 1);
      }
      p.slot = Declare(p.name, p.type, p.line, /*is_param=*/true);
    }
    for (const Param& p : f->params) {
      if (p.length_var.empty()) continue;
      const Param* bound = nullptr;
      for (const Param& q : f->params) {
        if (q.name == p.length_var) bound = &q;
      }
      if (bound == nullptr || bound->type != Type::kInt) {
        Fail("length binding '" + p.length_var + "' of '" + p.name +
                 "' is not an int parameter",
             p.line, 1);
      }
    }
    ResolveBlock(&f->body);
  }

  int Declare(const std::string& name, Type type, int line, bool is_param) {
    SlotInfo info;
    info.name = name;
    info.type = type;
    info.line = line;
    info.is_param = is_param;
    fn_->slots.push_back(info);
    int slot = static_cast<int>(fn_->slots.size()) - 1;
    scopes_.back()[name] = slot;
    return slot;
  }

  void DeclareLocal(Stmt* s, Type type) {
    if (scopes_.back().count(s->name)) {
      Fail("redeclaration of '" + s->name + "'", s->line, s->column);
    }
    s->slot = Declare(s->name, type, s->line, false);
  }

  int Lookup(const std::string& name, int line, int column) const {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      auto found = it->find(name);
      if (found != it->end()) return found->second;
    }
    throw SyntaxError("use of undeclared variable '" + name + "'", line,
                      column);
  }

  int LookupTyped(const std::string& name, Type want, int line, int column) {
    int slot = Lookup(name, line, column);
    if (fn_->slots[slot].type != want) {
      Fail("'" + name + "' is " +
               (want == Type::kInt ? "an array, expected int"
                                   : "an int, expected array"),
           line, column);
    }
    return slot;
  }

  std::map<std::string, int> Visible() const {
    std::map<std::string, int> out;
    for (const auto& scope : scopes_) {
      for (const auto& [name, slot] : scope) out[name] = slot;
    }
    return out;
  }

  void ResolveBlock(Block* b) {
    scopes_.emplace_back();
    for (StmtPtr& s : b->stmts) ResolveStmt(s.get());
    scopes_.pop_back();
  }

  void EnterLoop(Stmt* s) {
    LoopInfo& info = program_->loops[s->loop_id];
    info.func = fn_->name;
    info.line = s->line;
    info.parent = loop_stack_.empty() ? -1 : loop_stack_.back();
    info.visible = Visible();
    loop_stack_.push_back(s->loop_id);
    ++breakable_depth_;
  }

  void ExitLoop() {
    loop_stack_.pop_back();
    --breakable_depth_;
  }

  void ResolveStmt(Stmt* s) {
    switch (s->kind) {
      case StmtKind::kDeclInt:
        if (s->value) ResolveExpr(s->value.get());
        DeclareLocal(s, Type::kInt);
        break;
      case StmtKind::kDeclArray:
        ResolveExpr(s->value.get());
        DeclareLocal(s, Type::kArray);
        break;
      case StmtKind::kAssign:
        ResolveExpr(s->value.get());
        s->slot = LookupTyped(s->name, Type::kInt, s->line, s->column);
        break;
      case StmtKind::kArrayWrite:
        s->slot = LookupTyped(s->name, Type::kArray, s->line, s->column);
        RecordSite(s->site, s->slot);
        ResolveExpr(s->index.get());
        ResolveExpr(s->value.get());
        break;
      case StmtKind::kResize:
        s->slot = LookupTyped(s->name, Type::kArray, s->line, s->column);
        ResolveExpr(s->value.get());
        break;
      case StmtKind::kIf:
        ResolveExpr(s->value.get());
        ResolveBlock(&s->body);
        if (s->has_else) ResolveBlock(&s->else_body);
        break;
      case StmtKind::kWhile:
        ResolveExpr(s->value.get());
        EnterLoop(s);
        ResolveBlock(&s->body);
        ExitLoop();
        break;
      case StmtKind::kFor:
        scopes_.emplace_back();
        if (s->init) ResolveStmt(s->init.get());
        EnterLoop(s);
        if (s->value) ResolveExpr(s->value.get());
        if (s->update) ResolveStmt(s->update.get());
        ResolveBlock(&s->body);
        ExitLoop();
        scopes_.pop_back();
        break;
      case StmtKind::kSwitch: {
        ResolveExpr(s->value.get());
        std::set<int64_t> labels;
        ++breakable_depth_;
        for (SwitchCase& c : s->cases) {
          for (int64_t label : c.labels) {
            if (!labels.insert(label).second) {
              Fail("duplicate case label " + std::to_string(label), c.line,
                   1);
            }
          }
          ResolveBlock(&c.body);
        }
        --breakable_depth_;
        break;
      }
      case StmtKind::kBreak:
        if (breakable_depth_ == 0) {
          Fail("'break' outside loop or switch", s->line, s->column);
        }
        break;
      case StmtKind::kReturn:
        if (s->value) ResolveExpr(s->value.get());
        break;
      case StmtKind::kExpr:
        ResolveExpr(s->value.get());
        break;
      case StmtKind::kInputInt:
        DeclareLocal(s, Type::kInt);
        break;
      case StmtKind::kInputArray:
        DeclareLocal(s, Type::kArray);
        break;
      case StmtKind::kPrint:
        for (ExprPtr& e : s->exprs) {
          if (e->kind == ExprKind::kVar) {
            e->slot = Lookup(e->name, e->line, e->column);
            e->type = fn_->slots[e->slot].type;
          } else {
            ResolveExpr(e.get());
          }
        }
        break;
      case StmtKind::kBlock:
        ResolveBlock(&s->body);
        break;
      case StmtKind::kTripCount:
        break;
    }
  }

  void RecordSite(int site, int slot) {
    SiteInfo& info = program_->sites[site];
    info.func = fn_->name;
    info.slot = slot;
    info.loop_id = loop_stack_.empty() ? -1 : loop_stack_.back();
  }

  void ResolveExpr(Expr* e) {
    switch (e->kind) {
      case ExprKind::kIntLit:
        break;
      case ExprKind::kVar:
        e->slot = LookupTyped(e->name, Type::kInt, e->line, e->column);
        e->type = Type::kInt;
        break;
      case ExprKind::kIndex:
        e->slot = LookupTyped(e->name, Type::kArray, e->line, e->column);
        RecordSite(e->site, e->slot);
        ResolveExpr(e->args[0].get());
        break;
      case ExprKind::kLen:
        e->slot = LookupTyped(e->name, Type::kArray, e->line, e->column);
        break;
      case ExprKind::kCall: {
        auto it = functions_.find(e->name);
        if (it == functions_.end()) {
          Fail("call to undefined function '" + e->name + "'", e->line,
               e->column);
        }
        const FunctionDef* callee = it->second;
        if (callee->params.size() != e->args.size()) {
          Fail("'" + e->name + "' expects " +
                   std::to_string(callee->params.size()) + " arguments, got " +
                   std::to_string(e->args.size()),
               e->line, e->column);
        }
        for (size_t i = 0; i < e->args.size(); ++i) {
          Expr* arg = e->args[i].get();
          if (callee->params[i].type == Type::kArray) {
            if (arg->kind != ExprKind::kVar) {
              Fail("argument " + std::to_string(i + 1) + " of '" + e->name +
                       "' must be an array variable",
                   arg->line, arg->column);
            }
            arg->slot =
                LookupTyped(arg->name, Type::kArray, arg->line, arg->column);
            arg->type = Type::kArray;
          } else {
            ResolveExpr(arg);
          }
        }
        break;
      }
      case ExprKind::kUnary:
        ResolveExpr(e->args[0].get());
        break;
      case ExprKind::kBinary:
        ResolveExpr(e->args[0].get());
        ResolveExpr(e->args[1].get());
        break;
    }
  }

  Program* program_;
  std::map<std::string, const FunctionDef*> functions_;
  FunctionDef* fn_ = nullptr;
  std::vector<std::map<std::string, int>> scopes_;
  std::vector<int> loop_stack_;
  int breakable_depth_ = 0;
};

}  // namespace

void Resolve(Program* program) { Resolver(program).Run(); }

}  // namespace hullcheck::checklang
