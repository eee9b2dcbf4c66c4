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


#include "hullcheck/depgraph.h"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <utility>

#include "hullcheck/error.h"
#include "hullcheck/exact.h"

namespace hullcheck::depgraph {

using checklang::BinOp;
using checklang::Block;
using checklang::Expr;
using checklang::ExprKind;
using checklang::FunctionDef;
using checklang::Program;
using checklang::RawScopeRecord;
using checklang::Stmt;
using checklang::StmtKind;
using checklang::Type;
using checklang::UnOp;

const char* SignText(Sign sign) {
  switch (sign) {
    case Sign::kPositive: return "+";
    case Sign::kNegative: return "-";
    case Sign::kUnknown: return "?";
  }
  return "?";
}

const char* RuleName(Rule rule) {
  switch (rule) {
    case Rule::kAssign: return "E1";
    case Rule::kParam: return "E2";
    case Rule::kTripCount: return "E3";
    case Rule::kLoopBound: return "E3-bound";
    case Rule::kProfile: return "E3-profile";
    case Rule::kIndex: return "E4";
    case Rule::kBound: return "bound";
    case Rule::kControl: return "control";
  }
  return "?";
}

Sign Multiply(Sign a, Sign b) {
  if (a == Sign::kUnknown || b == Sign::kUnknown) return Sign::kUnknown;
  return a == b ? Sign::kPositive : Sign::kNegative;
}

std::string Edge::ToString() const {
  std::ostringstream out;
  out << from << " -" << SignText(sign) << "-> " << to << " (" << RuleName(rule);
  if (nonlinear) out << " nonlinear";
  out << ", " << line << ")";
  return out.str();
}

namespace {

Sign SignOf(int64_t c) { return c > 0 ? Sign::kPositive : Sign::kNegative; }

void MakeNonlinear(LinearForm* f) {
  f->linear = false;
  f->coeffs.clear();
  f->constant = 0;
}

// out += scale * in.
void Accumulate(LinearForm* out, const LinearForm& in, int64_t scale) {
  out->reads_content = out->reads_content || in.reads_content;
  out->scalars.insert(in.scalars.begin(), in.scalars.end());
  if (!out->linear || !in.linear) {
    MakeNonlinear(out);
    return;
  }
  int64_t c = 0;
  if (__builtin_mul_overflow(in.constant, scale, &c) ||
      __builtin_add_overflow(out->constant, c, &out->constant)) {
    MakeNonlinear(out);
    return;
  }
  for (const auto& [name, coeff] : in.coeffs) {
    int64_t term = 0;
    int64_t& slot = out->coeffs[name];
    if (__builtin_mul_overflow(coeff, scale, &term) ||
        __builtin_add_overflow(slot, term, &slot)) {
      MakeNonlinear(out);
      return;
    }
    if (slot == 0) out->coeffs.erase(name);
  }
}

bool IsConstant(const LinearForm& f) { return f.linear && f.coeffs.empty(); }

void SplitConjuncts(const Expr& e, std::vector<const Expr*>* out) {
  if (e.kind == ExprKind::kBinary && e.binop == BinOp::kAnd) {
    SplitConjuncts(*e.args[0], out);
    SplitConjuncts(*e.args[1], out);
  } else {
    out->push_back(&e);
  }
}

std::string LenName(const std::string& array) { return "len(" + array + ")"; }

bool IsLenName(const std::string& name, std::string* array) {
  if (name.size() <= 5 || name.compare(0, 4, "len(") != 0 || name.back() != ')') {
    return false;
  }
  if (array != nullptr) *array = name.substr(4, name.size() - 5);
  return true;
}

}  // namespace

LinearForm AnalyzeExpr(const Expr& e) {
  LinearForm f;
  switch (e.kind) {
    case ExprKind::kIntLit:
      f.constant = e.value;
      return f;
    case ExprKind::kVar:
      if (e.type != Type::kInt) {
        MakeNonlinear(&f);
        return f;
      }
      f.coeffs[e.name] = 1;
      f.scalars.insert(e.name);
      return f;
    case ExprKind::kLen:
      f.coeffs[LenName(e.name)] = 1;
      f.scalars.insert(LenName(e.name));
      return f;
    case ExprKind::kIndex:
      MakeNonlinear(&f);
      f.reads_content = true;
      return f;
    case ExprKind::kCall:
      MakeNonlinear(&f);
      f.reads_content = true;
      for (const auto& arg : e.args) {
        LinearForm a = AnalyzeExpr(*arg);
        f.scalars.insert(a.scalars.begin(), a.scalars.end());
      }
      return f;
    case ExprKind::kUnary: {
      LinearForm operand = AnalyzeExpr(*e.args[0]);
      Accumulate(&f, operand, e.unop == UnOp::kNeg ? -1 : 1);
      if (e.unop == UnOp::kNot) MakeNonlinear(&f);
      return f;
    }
    case ExprKind::kBinary: {
      LinearForm l = AnalyzeExpr(*e.args[0]);
      LinearForm r = AnalyzeExpr(*e.args[1]);
      switch (e.binop) {
        case BinOp::kAdd:
          Accumulate(&f, l, 1);
          Accumulate(&f, r, 1);
          return f;
        case BinOp::kSub:
          Accumulate(&f, l, 1);
          Accumulate(&f, r, -1);
          return f;
        case BinOp::kMul:
          if (IsConstant(l)) {
            Accumulate(&f, r, l.constant);
            f.reads_content = f.reads_content || l.reads_content;
            return f;
          }
          if (IsConstant(r)) {
            Accumulate(&f, l, r.constant);
            f.reads_content = f.reads_content || r.reads_content;
            return f;
          }
          break;
        default:
          break;
      }
      Accumulate(&f, l, 1);
      Accumulate(&f, r, 1);
      MakeNonlinear(&f);
      return f;
    }
  }
  return f;
}

// --- DependencyGraph --------------------------------------------------------

bool DependencyGraph::HasNode(const std::string& name) const {
  for (const Node& n : nodes_) {
    if (n.name == name) return true;
  }
  return false;
}

NodeKind DependencyGraph::KindOf(const std::string& name) const {
  for (const Node& n : nodes_) {
    if (n.name == name) return n.kind;
  }
  throw UsageError("no node '" + name + "' in the graph of " + function_);
}

void DependencyGraph::AddNode(NodeKind kind, const std::string& name) {
  if (!HasNode(name)) nodes_.push_back({kind, name});
}

void DependencyGraph::AddEdge(Edge edge) {
  for (const Edge& e : edges_) {
    if (e.from == edge.from && e.to == edge.to && e.sign == edge.sign &&
        e.rule == edge.rule && e.line == edge.line &&
        e.loop_id == edge.loop_id && e.nonlinear == edge.nonlinear) {
      return;
    }
  }
  edges_.push_back(std::move(edge));
}

void DependencyGraph::Taint(const std::string& name, const std::string& reason) {
  std::vector<std::string>& reasons = taints_[name];
  if (std::find(reasons.begin(), reasons.end(), reason) == reasons.end()) {
    reasons.push_back(reason);
  }
}

std::string DependencyGraph::Dump() const {
  std::ostringstream out;
  for (const Edge& e : edges_) out << e.ToString() << '\n';
  return out.str();
}

// --- Builder ----------------------------------------------------------------

class Builder {
 public:
  Builder(const Program& program, const FunctionDef& fn)
      : prog_(program), fn_(fn) {}

  DependencyGraph Build() {
    dg_.function_ = fn_.name;
    DeclareNames();
    container_ = kTopLevel;
    WalkBlock(fn_.body);
    AnalyzeLoops();
    ComputeIndexVars();
    CreateTripCounters();
    EmitDefinitions();
    EmitLoopBounds();
    EmitControl();
    EmitSites();
    EmitArrays();
    EmitCalls();
    return std::move(dg_);
  }

 private:
  static constexpr int kTopLevel = -2;

  enum class Where { kPlain, kForInit, kForUpdate };

  struct Def {
    std::string var;
    LinearForm form;
    int line = 0;
    int loop_id = -1;
    int arm_id = -1;
    Where where = Where::kPlain;
    int header_loop = -1;
  };

  struct Cond {
    int line = 0;
    int loop_id = -1;
    LinearForm form;
    std::set<std::string> assigned;
    std::set<std::string> targets;
    std::set<int> arms;
  };

  struct Arm {
    int arm_id = -1;
    int loop_id = -1;
    bool loop_body = false;
    int line = 0;
    int cond = -1;  // index into conds_ for branch arms
  };

  struct ArrayDecl {
    std::string name;
    LinearForm form;
    int line = 0;
    bool in_loop = false;
    bool input = false;
  };

  struct Call {
    std::string callee;
    std::vector<std::string> args;  // variable name or empty
    int line = 0;
    int loop_id = -1;
  };

  struct Conjunct {
    LinearForm form;  // iterator side minus bound side
    std::set<std::string> iterators;
  };

  void DeclareNames() {
    std::map<std::string, int> count;
    for (const checklang::SlotInfo& s : fn_.slots) {
      if (s.is_trip_counter) continue;
      if (count[s.name]++ == 0) {
        dg_.declared_.push_back(s.name);
        dg_.AddNode(s.type == Type::kArray ? NodeKind::kArray : NodeKind::kVariable,
                    s.name);
      }
    }
    for (const auto& [name, n] : count) {
      if (n > 1) dg_.Taint(name, "declared more than once");
    }
    for (const checklang::Param& p : fn_.params) {
      dg_.params_.push_back(p.name);
      if (!p.length_var.empty()) dg_.bindings_[p.name] = p.length_var;
    }
  }

  int InnermostLoop() const {
    return loop_stack_.empty() ? -1 : loop_stack_.back();
  }

  std::vector<int> Chain(int loop_id) const {
    std::vector<int> chain;
    for (int l = loop_id; l >= 0; l = prog_.loops[l].parent) chain.push_back(l);
    return chain;
  }

  bool InLoop(int loop_id, int outer) const {
    for (int l = loop_id; l >= 0; l = prog_.loops[l].parent) {
      if (l == outer) return true;
    }
    return false;
  }

  // --- Walk ---------------------------------------------------------------

  void WalkBlock(const Block& b) {
    for (const auto& s : b.stmts) WalkStmt(*s);
  }

  void WalkArm(const Block& b, Arm arm) {
    arm.arm_id = b.arm_id;
    arms_[b.arm_id] = arm;
    for (int c : cond_stack_) conds_[c].arms.insert(b.arm_id);
    arm_stack_.push_back(b.arm_id);
    WalkBlock(b);
    arm_stack_.pop_back();
  }

  int PushCond(const Expr& e, int line) {
    Cond c;
    c.line = line;
    c.loop_id = InnermostLoop();
    c.form = AnalyzeExpr(e);
    conds_.push_back(std::move(c));
    int id = static_cast<int>(conds_.size()) - 1;
    cond_stack_.push_back(id);
    return id;
  }

  void WalkStmt(const Stmt& s) {
    int saved_container = container_;
    switch (s.kind) {
      case StmtKind::kDeclInt:
      case StmtKind::kAssign: {
        LinearForm form;
        if (s.value) {
          WalkExpr(*s.value);
          form = AnalyzeExpr(*s.value);
        }
        AddDef(s.name, std::move(form), s.line);
        break;
      }
      case StmtKind::kDeclArray:
        WalkExpr(*s.value);
        array_decls_.push_back(
            {s.name, AnalyzeExpr(*s.value), s.line, !loop_stack_.empty(), false});
        break;
      case StmtKind::kArrayWrite:
        WalkExpr(*s.value);
        WalkExpr(*s.index);
        AddSite(s.name, s.site, *s.index, s.line);
        break;
      case StmtKind::kResize:
        WalkExpr(*s.value);
        resized_.insert(s.name);
        break;
      case StmtKind::kIf: {
        WalkExpr(*s.value);
        int c = PushCond(*s.value, s.line);
        container_ = -1;
        WalkArm(s.body, {-1, InnermostLoop(), false, s.line, c});
        if (s.has_else) WalkArm(s.else_body, {-1, InnermostLoop(), false, s.line, c});
        cond_stack_.pop_back();
        break;
      }
      case StmtKind::kSwitch: {
        WalkExpr(*s.value);
        int c = PushCond(*s.value, s.line);
        container_ = -1;
        for (const auto& sc : s.cases) {
          WalkArm(sc.body, {-1, InnermostLoop(), false, sc.line, c});
        }
        cond_stack_.pop_back();
        break;
      }
      case StmtKind::kWhile:
      case StmtKind::kFor: {
        int id = s.loop_id;
        if (s.init) {
          header_ = Where::kForInit;
          header_loop_ = id;
          WalkStmt(*s.init);
          header_ = Where::kPlain;
        }
        loop_stack_.push_back(id);
        LoopFacts& facts = dg_.loops_[id];
        facts.parent = prog_.loops[id].parent;
        facts.line = s.line;
        facts.visible = prog_.loops[id].visible;
        loop_conds_[id] = s.value.get();
        container_ = id;
        if (s.value) WalkExpr(*s.value);
        WalkArm(s.body, {-1, id, true, s.line, -1});
        if (s.update) {
          header_ = Where::kForUpdate;
          header_loop_ = id;
          container_ = id;
          WalkStmt(*s.update);
          header_ = Where::kPlain;
        }
        loop_stack_.pop_back();
        break;
      }
      case StmtKind::kReturn:
        if (s.value) WalkExpr(*s.value);
        break;
      case StmtKind::kExpr:
        WalkExpr(*s.value);
        break;
      case StmtKind::kInputInt: {
        LinearForm form;
        MakeNonlinear(&form);
        form.reads_content = true;
        AddDef(s.name, std::move(form), s.line);
        break;
      }
      case StmtKind::kInputArray:
        array_decls_.push_back({s.name, {}, s.line, !loop_stack_.empty(), true});
        break;
      case StmtKind::kPrint:
        for (const auto& e : s.exprs) WalkExpr(*e);
        break;
      case StmtKind::kBlock:
        WalkBlock(s.body);
        break;
      case StmtKind::kBreak:
      case StmtKind::kTripCount:
        break;
    }
    container_ = saved_container;
  }

  void WalkExpr(const Expr& e) {
    switch (e.kind) {
      case ExprKind::kIndex:
        WalkExpr(*e.args[0]);
        AddSite(e.name, e.site, *e.args[0], e.line);
        return;
      case ExprKind::kCall: {
        Call call;
        call.callee = e.name;
        call.line = e.line;
        call.loop_id = InnermostLoop();
        for (const auto& arg : e.args) {
          WalkExpr(*arg);
          call.args.push_back(arg->kind == ExprKind::kVar ? arg->name : "");
        }
        calls_.push_back(std::move(call));
        return;
      }
      case ExprKind::kBinary:
        if (e.binop == BinOp::kAnd || e.binop == BinOp::kOr) {
          // The right operand only runs for some values of the left one.
          WalkExpr(*e.args[0]);
          int saved = container_;
          PushCond(*e.args[0], e.line);
          container_ = -1;
          WalkExpr(*e.args[1]);
          cond_stack_.pop_back();
          container_ = saved;
          return;
        }
        break;
      default:
        break;
    }
    for (const auto& arg : e.args) WalkExpr(*arg);
  }

  void AddDef(const std::string& var, LinearForm form, int line) {
    Def d;
    d.var = var;
    d.form = std::move(form);
    d.line = line;
    d.loop_id = InnermostLoop();
    d.where = header_;
    d.header_loop = header_ == Where::kPlain ? -1 : header_loop_;
    if (header_ == Where::kPlain && !arm_stack_.empty()) {
      d.arm_id = arm_stack_.back();
      arm_assigns_[d.arm_id].push_back(defs_.size());
    }
    for (int l : loop_stack_) {
      loop_assigned_[l].insert(var);
      if (header_ == Where::kPlain || l != header_loop_) {
        dg_.loops_[l].body_assigned.insert(var);
      }
    }
    for (int c : cond_stack_) conds_[c].assigned.insert(var);
    dg_.assigned_.insert(var);
    defs_.push_back(std::move(d));
  }

  void AddSite(const std::string& target, int site, const Expr& index, int line) {
    SiteFacts sf;
    sf.site = site;
    sf.target = target;
    sf.line = line;
    sf.loop_id = InnermostLoop();
    sf.index = AnalyzeExpr(index);
    sf.container = container_;
    for (int c : cond_stack_) {
      conds_[c].targets.insert(target);
      if (conds_[c].form.reads_content) sf.content_conditional = true;
    }
    dg_.sites_.push_back(std::move(sf));
  }

  // --- Analysis -----------------------------------------------------------

  void AnalyzeLoops() {
    for (auto& [id, facts] : dg_.loops_) {
      const Expr* cond = loop_conds_[id];
      std::vector<Conjunct>& bounds = conjuncts_[id];
      bool recognized = cond != nullptr;
      if (cond != nullptr) {
        std::vector<const Expr*> parts;
        SplitConjuncts(*cond, &parts);
        for (const Expr* part : parts) {
          if (part->kind != ExprKind::kBinary ||
              (part->binop != BinOp::kLt && part->binop != BinOp::kLe &&
               part->binop != BinOp::kGt && part->binop != BinOp::kGe)) {
            recognized = false;
            continue;
          }
          LinearForm a = AnalyzeExpr(*part->args[0]);
          LinearForm b = AnalyzeExpr(*part->args[1]);
          if (!a.linear || !b.linear || a.reads_content || b.reads_content) {
            recognized = false;
            continue;
          }
          bool less = part->binop == BinOp::kLt || part->binop == BinOp::kLe;
          LinearForm f;
          Accumulate(&f, less ? a : b, 1);
          Accumulate(&f, less ? b : a, -1);
          if (!f.linear) {
            recognized = false;
            continue;
          }
          Conjunct c;
          for (const auto& [name, coeff] : f.coeffs) {
            if (loop_assigned_[id].count(name) == 0) continue;
            if (coeff <= 0) recognized = false;
            c.iterators.insert(name);
          }
          if (c.iterators.empty()) continue;
          for (const auto& [name, coeff] : f.coeffs) {
            if (c.iterators.count(name) == 0) facts.variable_bound = true;
          }
          c.form = std::move(f);
          facts.iterators.insert(c.iterators.begin(), c.iterators.end());
          bounds.push_back(std::move(c));
        }
      }
      facts.bound_recognized = recognized && !bounds.empty();
    }
    for (auto& [id, facts] : dg_.loops_) {
      for (const std::string& it : facts.iterators) {
        if (std::find(dg_.params_.begin(), dg_.params_.end(), it) !=
            dg_.params_.end()) {
          facts.variable_start = true;
        }
        for (const Def& d : defs_) {
          if (d.var != it) continue;
          bool inside = d.where == Where::kForInit ? false : InLoop(d.loop_id, id);
          if (!inside && !IsConstant(d.form)) facts.variable_start = true;
        }
      }
    }
  }

  void ComputeIndexVars() {
    for (const SiteFacts& sf : dg_.sites_) {
      for (const auto& [name, c] : sf.index.coeffs) index_vars_.insert(name);
      index_vars_.insert(sf.index.scalars.begin(), sf.index.scalars.end());
    }
    bool changed = true;
    while (changed) {
      changed = false;
      auto add = [&](const std::string& name) {
        if (index_vars_.insert(name).second) changed = true;
      };
      for (const Def& d : defs_) {
        if (index_vars_.count(d.var) == 0) continue;
        for (const auto& [name, c] : d.form.coeffs) add(name);
        for (const std::string& name : d.form.scalars) add(name);
      }
      for (const auto& [id, assigned] : loop_assigned_) {
        bool relevant = false;
        for (const std::string& v : assigned) {
          if (index_vars_.count(v) != 0) relevant = true;
        }
        if (!relevant || loop_conds_[id] == nullptr) continue;
        for (const std::string& name : AnalyzeExpr(*loop_conds_[id]).scalars) {
          add(name);
        }
      }
    }
  }

  bool ChainRecognized(int loop_id) const {
    for (int l : Chain(loop_id)) {
      if (!dg_.loops_.at(l).bound_recognized) return false;
    }
    return true;
  }

  void CreateTripCounters() {
    std::set<std::string> used(dg_.declared_.begin(), dg_.declared_.end());
    int next = 1;
    for (const auto& [arm_id, arm] : arms_) {
      if (arm.loop_id < 0) continue;
      auto it = arm_assigns_.find(arm_id);
      if (it == arm_assigns_.end()) continue;
      bool qualifies = false;
      for (size_t d : it->second) {
        if (index_vars_.count(defs_[d].var) != 0) qualifies = true;
      }
      if (!qualifies) continue;
      TripCounter tc;
      do {
        tc.name = "tc" + std::to_string(next++);
      } while (used.count(tc.name) != 0);
      tc.arm_id = arm_id;
      tc.loop_id = arm.loop_id;
      tc.line = arm.line;
      tc.loop_body = arm.loop_body;
      bool content_branch =
          !arm.loop_body && arm.cond >= 0 && conds_[arm.cond].form.reads_content;
      tc.data_dependent = content_branch || !ChainRecognized(arm.loop_id);
      for (size_t d : it->second) {
        const Def& def = defs_[d];
        const LinearForm& f = def.form;
        if (f.linear && f.coeffs.size() == 1 && f.coeffs.count(def.var) != 0 &&
            f.coeffs.at(def.var) == 1) {
          tc.increments[def.var] += f.constant;
        }
      }
      dg_.AddNode(NodeKind::kTripCount, tc.name);
      if (tc.data_dependent) dg_.Taint(tc.name, kAwaitingFit);
      arm_tc_[arm_id] = tc.name;
      dg_.tcs_.push_back(std::move(tc));
    }
  }

  void EmitDefinitions() {
    for (const Def& d : defs_) {
      const LinearForm& f = d.form;
      for (const auto& [name, coeff] : f.coeffs) {
        AddVarNode(name);
        dg_.AddEdge({name, d.var, SignOf(coeff), Rule::kAssign, d.line, d.loop_id});
      }
      if (!f.linear) {
        for (const std::string& name : f.scalars) {
          AddVarNode(name);
          dg_.AddEdge({name, d.var, Sign::kUnknown, Rule::kAssign, d.line,
                       d.loop_id, true});
        }
        if (f.reads_content) {
          dg_.AddNode(NodeKind::kVariable, kContentNode);
          dg_.AddEdge({kContentNode, d.var, Sign::kUnknown, Rule::kAssign,
                       d.line, d.loop_id, true});
        }
        dg_.Taint(d.var, "nonlinear assignment at line " + std::to_string(d.line));
        continue;
      }
      if (f.constant < 0) dg_.negative_.insert(d.var);
      if (d.loop_id >= 0) LoopDefinition(d);
    }
  }

  static bool Increasing(const Def& d) {
    const LinearForm& f = d.form;
    if (!f.linear || f.constant < 0) return false;
    auto it = f.coeffs.find(d.var);
    if (it == f.coeffs.end() || it->second != 1) return false;
    for (const auto& [name, coeff] : f.coeffs) {
      if (coeff <= 0) return false;
    }
    return true;
  }

  void LoopDefinition(const Def& d) {
    const std::string line = std::to_string(d.line);
    if (d.where == Where::kForInit &&
        dg_.loops_[d.header_loop].iterators.count(d.var) != 0) {
      return;
    }
    if (d.where == Where::kForUpdate) {
      const LoopFacts& facts = dg_.loops_[d.header_loop];
      if (facts.iterators.count(d.var) == 0 || !facts.bound_recognized) {
        dg_.Taint(d.var, "updated in a loop header without a bound at line " + line);
      } else if (!Increasing(d)) {
        dg_.Taint(d.var, "loop iterator is not increasing at line " + line);
      }
      return;
    }
    bool iterator = false;
    for (int l : Chain(d.loop_id)) {
      const LoopFacts& facts = dg_.loops_[l];
      if (facts.iterators.count(d.var) != 0 && facts.bound_recognized) {
        iterator = true;
      }
    }
    const LinearForm& f = d.form;
    bool accumulating = f.coeffs.count(d.var) != 0 && f.coeffs.at(d.var) == 1;
    auto tc = d.arm_id >= 0 ? arm_tc_.find(d.arm_id) : arm_tc_.end();
    if (iterator) {
      if (!Increasing(d)) {
        dg_.Taint(d.var, "loop iterator is not increasing at line " + line);
      } else if (f.coeffs.size() == 1 && tc != arm_tc_.end() &&
                 f.constant != 0) {
        dg_.AddEdge({tc->second, d.var, Sign::kPositive, Rule::kTripCount,
                     d.line, d.loop_id});
      }
      return;
    }
    if (accumulating && f.coeffs.size() == 1) {
      if (tc != arm_tc_.end() && f.constant != 0) {
        dg_.AddEdge({tc->second, d.var, SignOf(f.constant), Rule::kTripCount,
                     d.line, d.loop_id});
      }
      return;
    }
    if (accumulating) {
      dg_.Taint(d.var, "accumulates a variable amount inside a loop at line " + line);
    } else {
      dg_.Taint(d.var, "reassigned inside a loop at line " + line);
    }
  }

  void EmitLoopBounds() {
    for (const auto& [id, facts] : dg_.loops_) {
      if (!facts.bound_recognized) continue;
      for (const Conjunct& c : conjuncts_[id]) {
        for (const std::string& it : c.iterators) {
          for (const auto& [name, coeff] : c.form.coeffs) {
            if (c.iterators.count(name) != 0) continue;
            AddVarNode(name);
            dg_.AddEdge({name, it, SignOf(-coeff), Rule::kLoopBound, facts.line, id});
          }
        }
      }
    }
    for (const TripCounter& tc : dg_.tcs_) {
      if (!tc.loop_body || tc.data_dependent) continue;
      for (int l : Chain(tc.loop_id)) {
        const LoopFacts& facts = dg_.loops_[l];
        for (const Conjunct& c : conjuncts_[l]) {
          for (const auto& [name, coeff] : c.form.coeffs) {
            if (c.iterators.count(name) != 0) continue;
            dg_.AddEdge({name, tc.name, SignOf(-coeff), Rule::kLoopBound,
                         facts.line, l});
          }
        }
      }
    }
  }

  void EmitControl() {
    for (const Cond& c : conds_) {
      std::vector<std::string> sources(c.form.scalars.begin(), c.form.scalars.end());
      if (c.form.reads_content && c.loop_id < 0) {
        dg_.AddNode(NodeKind::kVariable, kContentNode);
        sources.push_back(kContentNode);
      }
      std::vector<std::string> sinks(c.assigned.begin(), c.assigned.end());
      sinks.insert(sinks.end(), c.targets.begin(), c.targets.end());
      for (int arm : c.arms) {
        auto it = arm_tc_.find(arm);
        if (it != arm_tc_.end()) sinks.push_back(it->second);
      }
      for (const std::string& from : sources) {
        AddVarNode(from);
        for (const std::string& to : sinks) {
          dg_.AddEdge({from, to, Sign::kUnknown, Rule::kControl, c.line, c.loop_id});
        }
      }
    }
  }

  void EmitSites() {
    for (const SiteFacts& sf : dg_.sites_) {
      const LinearForm& f = sf.index;
      for (const auto& [name, coeff] : f.coeffs) {
        AddVarNode(name);
        dg_.AddEdge({name, sf.target, SignOf(coeff), Rule::kIndex, sf.line,
                     sf.loop_id});
      }
      if (f.linear) continue;
      for (const std::string& name : f.scalars) {
        AddVarNode(name);
        dg_.AddEdge({name, sf.target, Sign::kUnknown, Rule::kIndex, sf.line,
                     sf.loop_id, true});
      }
      const std::string line = std::to_string(sf.line);
      if (f.reads_content) {
        dg_.Taint(sf.target, "index read from memory at line " + line);
      } else {
        dg_.Taint(sf.target, "nonlinear index at line " + line);
      }
    }
  }

  void EmitArrays() {
    for (const checklang::Param& p : fn_.params) {
      if (p.type != Type::kArray) continue;
      std::string source = p.length_var.empty() ? LenName(p.name) : p.length_var;
      AddVarNode(source);
      dg_.AddEdge({source, p.name, Sign::kNegative, Rule::kBound, p.line, -1});
    }
    for (const ArrayDecl& a : array_decls_) {
      const std::string line = std::to_string(a.line);
      if (a.input) {
        dg_.Taint(a.name, "length read from input at line " + line);
        continue;
      }
      if (a.in_loop) dg_.Taint(a.name, "allocated inside a loop at line " + line);
      if (!a.form.linear) {
        dg_.Taint(a.name, "nonlinear allocation length at line " + line);
        continue;
      }
      for (const auto& [name, coeff] : a.form.coeffs) {
        AddVarNode(name);
        dg_.AddEdge({name, a.name, SignOf(-coeff), Rule::kBound, a.line,
                     a.in_loop ? -1 : -1});
      }
      dg_.allocations_[a.name] = a.form;
    }
    for (const std::string& name : resized_) {
      dg_.Taint(LenName(name), "array is resized");
    }
  }

  void EmitCalls() {
    for (const Call& call : calls_) {
      const FunctionDef* callee = prog_.Find(call.callee);
      if (callee == nullptr) continue;
      for (size_t i = 0; i < call.args.size() && i < callee->params.size(); ++i) {
        if (call.args[i].empty()) continue;
        std::string param = call.callee + "." + callee->params[i].name;
        dg_.AddNode(NodeKind::kVariable, param);
        dg_.AddEdge({call.args[i], param, Sign::kUnknown, Rule::kParam,
                     call.line, call.loop_id});
        dg_.AddEdge({param, call.args[i], Sign::kUnknown, Rule::kParam,
                     call.line, call.loop_id});
      }
    }
  }

  void AddVarNode(const std::string& name) {
    if (!dg_.HasNode(name)) dg_.AddNode(NodeKind::kVariable, name);
    std::string array;
    if (IsLenName(name, &array) && resized_.count(array) != 0) {
      dg_.Taint(name, "array is resized");
    }
  }

 public:
  static constexpr const char* kAwaitingFit =
      "trip count depends on array contents and has no profile fit";

 private:
  const Program& prog_;
  const FunctionDef& fn_;
  DependencyGraph dg_;

  std::vector<int> loop_stack_;
  std::vector<int> arm_stack_;
  std::vector<int> cond_stack_;
  int container_ = kTopLevel;
  Where header_ = Where::kPlain;
  int header_loop_ = -1;

  std::vector<Def> defs_;
  std::vector<Cond> conds_;
  std::map<int, Arm> arms_;
  std::map<int, std::vector<size_t>> arm_assigns_;
  std::map<int, std::set<std::string>> loop_assigned_;
  std::map<int, const Expr*> loop_conds_;
  std::map<int, std::vector<Conjunct>> conjuncts_;
  std::vector<ArrayDecl> array_decls_;
  std::vector<Call> calls_;
  std::set<std::string> resized_;
  std::set<std::string> index_vars_;
  std::map<int, std::string> arm_tc_;
};

DependencyGraph BuildDg(const Program& program, const FunctionDef& fn) {
  return Builder(program, fn).Build();
}

std::map<std::string, DependencyGraph> BuildAll(const Program& program) {
  std::map<std::string, DependencyGraph> out;
  for (const FunctionDef& fn : program.functions) {
    out.emplace(fn.name, BuildDg(program, fn));
  }
  return out;
}

// --- Profile refinement -----------------------------------------------------

namespace {

// Solves y = c . x + c0 exactly over `rows`. Returns false when the system is
// inconsistent or the columns are dependent.
bool ExactFit(const std::vector<std::vector<int64_t>>& xs,
              const std::vector<int64_t>& ys, std::vector<Rational>* coeffs) {
  size_t k = xs.empty() ? 0 : xs[0].size();
  size_t cols = k + 1;
  std::vector<std::vector<Rational>> m;
  for (size_t r = 0; r < xs.size(); ++r) {
    std::vector<Rational> row;
    for (int64_t v : xs[r]) row.emplace_back(v);
    row.emplace_back(1);
    row.emplace_back(ys[r]);
    m.push_back(std::move(row));
  }
  size_t rank = 0;
  std::vector<size_t> pivots;
  for (size_t c = 0; c <= cols && rank < m.size(); ++c) {
    size_t p = rank;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    if (c == cols) return false;  // pivot in the y column: inconsistent
    std::swap(m[p], m[rank]);
    Rational inv = 1 / m[rank][c];
    for (Rational& v : m[rank]) v *= inv;
    for (size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][c] == 0) continue;
      Rational factor = m[r][c];
      for (size_t j = c; j <= cols; ++j) m[r][j] -= factor * m[rank][j];
    }
    pivots.push_back(c);
    ++rank;
  }
  if (rank != cols) return false;
  coeffs->assign(cols, Rational(0));
  for (size_t r = 0; r < rank; ++r) (*coeffs)[pivots[r]] = m[r][cols];
  return true;
}

}  // namespace

DependencyGraph RefineWithProfile(const DependencyGraph& dg,
                                  const std::vector<RawScopeRecord>& records) {
  DependencyGraph out = dg;
  // Candidate columns: int parameters in order, then parameter lengths.
  std::vector<std::string> columns;
  for (const std::string& p : dg.params()) {
    if (dg.bindings().count(p) == 0 && dg.KindOf(p) == NodeKind::kArray) continue;
    if (dg.KindOf(p) == NodeKind::kVariable) columns.push_back(p);
  }
  for (const std::string& p : dg.params()) {
    if (dg.KindOf(p) == NodeKind::kArray) columns.push_back(LenName(p));
  }
  std::set<std::pair<std::vector<int64_t>, std::vector<int64_t>>> rows;
  std::vector<std::string> tc_names;
  for (const TripCounter& tc : dg.trip_counters()) tc_names.push_back(tc.name);
  for (const RawScopeRecord& rec : records) {
    if (rec.func != dg.function() || rec.scope != "function" || !rec.complete ||
        !rec.all_checks_passed) {
      continue;
    }
    std::vector<int64_t> x;
    std::vector<int64_t> t;
    bool ok = true;
    for (const std::string& c : columns) {
      auto it = rec.candidates.find(c);
      if (it == rec.candidates.end()) {
        ok = false;
        break;
      }
      x.push_back(it->second);
    }
    for (const std::string& name : tc_names) {
      auto it = rec.trip_counts.find(name);
      if (it == rec.trip_counts.end()) {
        ok = false;
        break;
      }
      t.push_back(it->second);
    }
    if (ok) rows.emplace(std::move(x), std::move(t));
  }

  // Group data-dependent counters by the variable they accumulate.
  std::map<std::string, std::vector<size_t>> groups;
  for (size_t i = 0; i < dg.trip_counters().size(); ++i) {
    const TripCounter& tc = dg.trip_counters()[i];
    if (!tc.data_dependent) continue;
    auto it = out.taints_.find(tc.name);
    if (it != out.taints_.end()) {
      auto& reasons = it->second;
      reasons.erase(std::remove(reasons.begin(), reasons.end(),
                                std::string(Builder::kAwaitingFit)),
                    reasons.end());
      if (reasons.empty()) out.taints_.erase(it);
    }
    if (tc.increments.empty()) out.Taint(tc.name, Builder::kAwaitingFit);
    for (const auto& [var, step] : tc.increments) groups[var].push_back(i);
  }

  constexpr size_t kMaxTerms = 4;
  for (const auto& [var, members] : groups) {
    std::vector<int64_t> ys;
    std::vector<std::vector<int64_t>> all_x;
    for (const auto& [x, t] : rows) {
      int64_t y = 0;
      for (size_t i : members) {
        y += dg.trip_counters()[i].increments.at(var) * t[i];
      }
      all_x.push_back(x);
      ys.push_back(y);
    }
    bool found = false;
    std::vector<std::pair<std::string, Rational>> fit;
    Rational fit_constant;
    for (size_t k = 1; k <= std::min(kMaxTerms, columns.size()) && !found; ++k) {
      std::vector<bool> pick(columns.size(), false);
      std::fill(pick.begin(), pick.begin() + k, true);
      do {
        std::vector<size_t> cols;
        for (size_t c = 0; c < columns.size(); ++c) {
          if (pick[c]) cols.push_back(c);
        }
        std::vector<std::vector<int64_t>> xs;
        std::set<std::vector<int64_t>> distinct;
        for (const auto& x : all_x) {
          std::vector<int64_t> sub;
          for (size_t c : cols) sub.push_back(x[c]);
          distinct.insert(sub);
          xs.push_back(std::move(sub));
        }
        if (distinct.size() < k + 2) continue;
        std::vector<Rational> coeffs;
        if (!ExactFit(xs, ys, &coeffs)) continue;
        bool all_nonzero = true;
        for (size_t j = 0; j < k; ++j) {
          if (coeffs[j] == 0) all_nonzero = false;
        }
        if (!all_nonzero) continue;
        for (size_t j = 0; j < k; ++j) fit.emplace_back(columns[cols[j]], coeffs[j]);
        fit_constant = coeffs[k];
        found = true;
      } while (!found && std::prev_permutation(pick.begin(), pick.end()));
    }
    if (found) {
      ProfileFit pf;
      pf.var = var;
      for (size_t i : members) {
        const TripCounter& tc = dg.trip_counters()[i];
        pf.counters.emplace_back(tc.name, tc.increments.at(var));
      }
      pf.terms = fit;
      pf.constant = fit_constant;
      out.fits_.push_back(std::move(pf));
    }
    for (size_t i : members) {
      const TripCounter& tc = dg.trip_counters()[i];
      if (!found) {
        out.Taint(tc.name, "no exact linear fit of its trip count over the profile");
        continue;
      }
      for (const auto& [name, coeff] : fit) {
        out.AddNode(NodeKind::kVariable, name);
        out.AddEdge({name, tc.name, coeff > 0 ? Sign::kPositive : Sign::kNegative,
                     Rule::kProfile, tc.line, tc.loop_id});
      }
    }
  }
  return out;
}

bool FitsHold(const DependencyGraph& dg, const RawScopeRecord& record) {
  int loop = -1;
  if (record.scope != "function") {
    try {
      loop = std::stoi(record.scope.substr(5));
    } catch (const std::exception&) {
      return false;
    }
  }
  auto inside = [&](const std::string& counter) {
    if (loop < 0) return true;
    for (const TripCounter& tc : dg.trip_counters()) {
      if (tc.name != counter) continue;
      for (int l = tc.loop_id; l >= 0; l = dg.loops().at(l).parent) {
        if (l == loop) return true;
      }
    }
    return false;
  };
  for (const ProfileFit& fit : dg.fits()) {
    bool relevant = false;
    for (const auto& [name, step] : fit.counters) relevant = relevant || inside(name);
    if (!relevant) continue;
    Rational y = 0;
    for (const auto& [name, step] : fit.counters) {
      auto it = record.trip_counts.find(name);
      if (it == record.trip_counts.end()) return false;
      y += Rational(step) * Rational(it->second);
    }
    Rational predicted = fit.constant;
    for (const auto& [name, coeff] : fit.terms) {
      auto it = record.candidates.find(name);
      if (it == record.candidates.end()) return false;
      predicted += coeff * Rational(it->second);
    }
    if (y != predicted) return false;
  }
  return true;
}

// --- Affecting sets ---------------------------------------------------------

std::string AffectingSet::ToString() const {
  std::ostringstream out;
  out << '(' << func << ',' << target;
  if (scope != "function") out << ',' << scope;
  out << "):(";
  for (size_t i = 0; i < vars.size(); ++i) {
    if (i > 0) out << ',';
    out << vars[i].name << ':'
        << (vars[i].sign == Correlation::kPositive ? '+' : '-');
  }
  out << ')';
  return out.str();
}

namespace {

class Tracer {
 public:
  Tracer(const DependencyGraph& dg, const std::string& target, int loop)
      : dg_(dg), target_(target), loop_(loop) {}

  AffectingSet Run(const std::string& scope) {
    out_.func = dg_.function();
    out_.scope = scope;
    out_.target = target_;
    bool any = false;
    for (const SiteFacts& sf : dg_.sites()) {
      if (sf.target == target_ && InScope(sf.loop_id)) any = true;
    }
    if (!any) {
      throw UsageError("no access to '" + target_ + "' in " + dg_.function() +
                       " " + scope);
    }
    TaintsOf(target_);
    CheckCoverage();
    for (const SiteFacts& sf : dg_.sites()) {
      if (sf.target != target_ || !InScope(sf.loop_id)) continue;
      if (sf.index.linear && sf.index.constant < 0) {
        Reject("index at line " + std::to_string(sf.line) + " may be negative");
      }
    }
    for (const Edge& e : dg_.edges()) {
      if (e.to != target_ || !InScope(e.loop_id)) continue;
      if (e.rule == Rule::kIndex || e.rule == Rule::kControl) Follow(e, Sign::kPositive, true);
    }
    std::vector<std::pair<std::string, Sign>> index_side(terminals_.begin(),
                                                         terminals_.end());
    LengthCoordinate();
    Assemble(index_side);
    out_.eligible = out_.reasons.empty();
    if (!out_.eligible) out_.vars.clear();
    return out_;
  }

 private:
  bool InScope(int loop_id) const {
    if (loop_ < 0) return true;
    for (int l = loop_id; l >= 0; l = dg_.loops().at(l).parent) {
      if (l == loop_) return true;
    }
    return false;
  }

  void Reject(const std::string& reason) {
    if (std::find(out_.reasons.begin(), out_.reasons.end(), reason) ==
        out_.reasons.end()) {
      out_.reasons.push_back(reason);
    }
  }

  void TaintsOf(const std::string& node) {
    auto it = dg_.taints().find(node);
    if (it == dg_.taints().end()) return;
    for (const std::string& r : it->second) Reject(node + ": " + r);
  }

  bool IsParam(const std::string& name) const {
    const auto& p = dg_.params();
    return std::find(p.begin(), p.end(), name) != p.end();
  }

  bool IsTerminal(const std::string& name) const {
    std::string array;
    bool is_len = IsLenName(name, &array);
    const std::string& base = is_len ? array : name;
    if (loop_ < 0) {
      if (!IsParam(base)) return false;
      return is_len ? dg_.KindOf(base) == NodeKind::kArray
                    : dg_.KindOf(base) == NodeKind::kVariable;
    }
    const auto& visible = dg_.loops().at(loop_).visible;
    if (visible.count(base) == 0) return false;
    return is_len ? dg_.KindOf(base) == NodeKind::kArray
                  : dg_.KindOf(base) == NodeKind::kVariable;
  }

  void AddTerminal(const std::string& name, Sign sign) {
    auto [it, inserted] = terminals_.emplace(name, sign);
    if (!inserted && it->second != sign) {
      Reject("conflicting correlations for " + name);
    }
  }

  // Walks backwards from `e.from`. `defining` is true while the path only
  // follows value-defining edges, whose signs must keep indices nonnegative.
  void Follow(const Edge& e, Sign sign, bool defining) {
    std::string where = " (" + std::string(RuleName(e.rule)) + ", line " +
                        std::to_string(e.line) + ")";
    if (e.sign == Sign::kUnknown) {
      Reject("unknown dependence " + e.from + " -> " + e.to + where);
      return;
    }
    if (e.nonlinear) {
      Reject("nonlinear dependence " + e.from + " -> " + e.to + where);
      return;
    }
    bool value_edge = e.rule == Rule::kIndex || e.rule == Rule::kAssign ||
                      e.rule == Rule::kTripCount;
    if (defining && value_edge && e.sign == Sign::kNegative) {
      Reject("index may become negative through " + e.from + " -> " + e.to + where);
    }
    if (e.rule == Rule::kProfile && loop_ >= 0) {
      if (dg_.loops().at(loop_).parent >= 0) {
        Reject("profile fit of " + e.to + " spans more than one loop entry");
      }
      if (dg_.assigned().count(e.from) != 0) {
        Reject(e.from + " changes before the loop");
      }
    }
    Visit(e.from, Multiply(sign, e.sign), defining && value_edge);
  }

  void Visit(const std::string& node, Sign sign, bool defining) {
    auto key = std::make_pair(node, defining);
    auto seen = visited_.find(key);
    if (seen != visited_.end()) {
      if (seen->second != sign) Reject("conflicting correlations for " + node);
      return;
    }
    visited_[key] = sign;
    auto other = visited_.find(std::make_pair(node, !defining));
    if (other != visited_.end() && other->second != sign) {
      Reject("conflicting correlations for " + node);
    }
    TaintsOf(node);
    if (defining && dg_.may_be_negative().count(node) != 0) {
      Reject(node + " may become negative");
    }
    if (IsTerminal(node)) {
      AddTerminal(node, sign);
    } else {
      std::string array;
      if (IsLenName(node, &array)) Reject("length of local array " + array + " in an index");
      if (loop_ < 0 && dg_.HasNode(node) && dg_.KindOf(node) == NodeKind::kTripCount) {
        CheckTripCounter(node);
      }
    }
    if (loop_ >= 0 && dg_.HasNode(node) && dg_.KindOf(node) == NodeKind::kTripCount) {
      CheckTripCounter(node);
    }
    for (const Edge& e : dg_.edges()) {
      if (e.to != node || !InScope(e.loop_id)) continue;
      switch (e.rule) {
        case Rule::kAssign:
        case Rule::kTripCount:
        case Rule::kControl:
          Follow(e, sign, defining);
          break;
        case Rule::kLoopBound:
        case Rule::kProfile:
          Follow(e, sign, false);
          break;
        default:
          break;
      }
    }
  }

  void CheckTripCounter(const std::string& name) {
    for (const TripCounter& tc : dg_.trip_counters()) {
      if (tc.name != name || tc.data_dependent) continue;
      int variable = 0;
      for (int l = tc.loop_id; l >= 0; l = dg_.loops().at(l).parent) {
        const LoopFacts& f = dg_.loops().at(l);
        if (f.variable_bound) ++variable;
        if (f.variable_start) {
          Reject(name + ": loop at line " + std::to_string(f.line) +
                 " starts from a variable");
        }
        if (l == loop_) break;
      }
      if (variable >= 2) Reject(name + ": trip count multiplies loop bounds");
    }
  }

  // Accesses under content-dependent branches must be dominated by an
  // unconditional access with the same variables and a larger offset, either
  // later or earlier with none of its variables reassigned in between.
  void CheckCoverage() {
    int want = loop_ < 0 ? -2 : loop_;
    auto stable = [&](const SiteFacts& c) {
      const std::set<std::string>& changed =
          c.container == -2 ? dg_.assigned()
                            : dg_.loops().at(c.container).body_assigned;
      for (const auto& [name, coeff] : c.index.coeffs) {
        if (changed.count(name) != 0) return false;
      }
      return true;
    };
    for (const SiteFacts& s : dg_.sites()) {
      if (s.target != target_ || !InScope(s.loop_id) || !s.content_conditional) {
        continue;
      }
      bool covered = false;
      for (const SiteFacts& c : dg_.sites()) {
        // An earlier read in the same iteration of the innermost loop also
        // dominates the access.
        bool same_iteration = s.loop_id >= 0 && c.container == s.loop_id &&
                              c.site < s.site && stable(c);
        if (c.target != target_ || c.content_conditional || c.site == s.site ||
            !c.index.linear || !s.index.linear) {
          continue;
        }
        if (!same_iteration &&
            (c.container != want || (c.site < s.site && !stable(c)))) {
          continue;
        }
        if (c.index.coeffs == s.index.coeffs &&
            c.index.constant >= s.index.constant) {
          covered = true;
        }
      }
      if (!covered) {
        Reject("access at line " + std::to_string(s.line) +
               " depends on array contents");
      }
    }
  }

  void LengthCoordinate() {
    const std::string len = LenName(target_);
    if (loop_ >= 0) {
      if (dg_.loops().at(loop_).visible.count(target_) == 0) {
        Reject(target_ + " is allocated inside the loop");
        return;
      }
      length_.emplace_back(len, Sign::kNegative);
      return;
    }
    if (IsParam(target_)) {
      auto b = dg_.bindings().find(target_);
      if (b == dg_.bindings().end() || terminals_.count(b->second) != 0) {
        length_.emplace_back(len, Sign::kNegative);
      } else {
        length_.emplace_back(b->second, Sign::kNegative);
      }
      return;
    }
    auto a = dg_.allocations().find(target_);
    if (a == dg_.allocations().end()) {
      Reject(target_ + " has no allocation in the function");
      return;
    }
    for (const auto& [name, coeff] : a->second.coeffs) {
      if (!IsParam(name) || dg_.KindOf(name) != NodeKind::kVariable ||
          dg_.assigned().count(name) != 0) {
        Reject("allocation length of " + target_ + " uses " + name +
               ", which is not an unmodified parameter");
        continue;
      }
      Sign s = coeff > 0 ? Sign::kNegative : Sign::kPositive;
      auto it = terminals_.find(name);
      if (it != terminals_.end()) {
        if (it->second != s) Reject("conflicting correlations for " + name);
        continue;
      }
      length_.emplace_back(name, s);
    }
  }

  size_t Position(const std::string& name) const {
    std::string array;
    const std::string& base = IsLenName(name, &array) ? array : name;
    const auto& d = dg_.declared();
    return static_cast<size_t>(std::find(d.begin(), d.end(), base) - d.begin());
  }

  void Assemble(std::vector<std::pair<std::string, Sign>> index_side) {
    std::stable_sort(index_side.begin(), index_side.end(),
                     [&](const auto& a, const auto& b) {
                       return Position(a.first) < Position(b.first);
                     });
    for (const auto& list : {index_side, length_}) {
      for (const auto& [name, sign] : list) {
        out_.vars.push_back({name, sign == Sign::kPositive ? Correlation::kPositive
                                                           : Correlation::kNegative});
      }
    }
    if (out_.vars.empty()) Reject("no pointer-affecting variables");
    if (out_.vars.size() > kMaxDimension) Reject("too many pointer-affecting variables");
  }

  const DependencyGraph& dg_;
  std::string target_;
  int loop_;
  AffectingSet out_;
  std::map<std::string, Sign> terminals_;
  std::vector<std::pair<std::string, Sign>> length_;
  std::map<std::pair<std::string, bool>, Sign> visited_;
};

int ParseScope(const DependencyGraph& dg, const std::string& scope) {
  if (scope == "function") return -1;
  if (scope.compare(0, 5, "loop:") == 0) {
    try {
      size_t used = 0;
      int id = std::stoi(scope.substr(5), &used);
      if (used == scope.size() - 5 && dg.loops().count(id) != 0) return id;
    } catch (const std::exception&) {
    }
  }
  throw UsageError("no scope '" + scope + "' in " + dg.function());
}

}  // namespace

AffectingSet ComputeAffectingSet(const DependencyGraph& dg,
                                 const std::string& target,
                                 const std::string& scope) {
  return Tracer(dg, target, ParseScope(dg, scope)).Run(scope);
}

std::vector<AffectingSet> AllAffectingSets(const DependencyGraph& dg) {
  std::vector<AffectingSet> out;
  std::vector<std::string> scopes = {"function"};
  for (const auto& [id, facts] : dg.loops()) scopes.push_back("loop:" + std::to_string(id));
  for (const std::string& scope : scopes) {
    int loop = ParseScope(dg, scope);
    std::vector<std::string> targets;
    for (const SiteFacts& sf : dg.sites()) {
      bool in = loop < 0;
      for (int l = sf.loop_id; l >= 0 && !in; l = dg.loops().at(l).parent) {
        if (l == loop) in = true;
      }
      if (in && std::find(targets.begin(), targets.end(), sf.target) == targets.end()) {
        targets.push_back(sf.target);
      }
    }
    for (const std::string& t : targets) out.push_back(ComputeAffectingSet(dg, t, scope));
  }
  return out;
}

// --- Instrumentation --------------------------------------------------------

namespace {

bool InsertCounter(Block* b, int arm_id, const checklang::StmtPtr& proto);

bool InsertInStmt(Stmt* s, int arm_id, const checklang::StmtPtr& proto) {
  if (InsertCounter(&s->body, arm_id, proto)) return true;
  if (InsertCounter(&s->else_body, arm_id, proto)) return true;
  for (auto& c : s->cases) {
    if (InsertCounter(&c.body, arm_id, proto)) return true;
  }
  return false;
}

bool InsertCounter(Block* b, int arm_id, const checklang::StmtPtr& proto) {
  if (b->arm_id == arm_id) {
    b->stmts.insert(b->stmts.begin(), proto->Clone());
    return true;
  }
  for (auto& s : b->stmts) {
    if (InsertInStmt(s.get(), arm_id, proto)) return true;
  }
  return false;
}

}  // namespace

Program InstrumentTripCounts(const Program& program,
                             const std::map<std::string, DependencyGraph>& dgs) {
  Program out = program.Clone();
  for (FunctionDef& fn : out.functions) {
    auto it = dgs.find(fn.name);
    if (it == dgs.end() || !fn.trip_counters.empty()) continue;
    for (const TripCounter& tc : it->second.trip_counters()) {
      checklang::SlotInfo info;
      info.name = tc.name;
      info.type = Type::kInt;
      info.line = tc.line;
      info.is_trip_counter = true;
      fn.slots.push_back(info);
      fn.trip_counters.push_back(tc.name);
      auto proto = std::make_unique<Stmt>();
      proto->kind = StmtKind::kTripCount;
      proto->line = tc.line;
      proto->name = tc.name;
      proto->slot = static_cast<int>(fn.slots.size()) - 1;
      InsertCounter(&fn.body, tc.arm_id, proto);
    }
  }
  return out;
}

}  // namespace hullcheck::depgraph
