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

#include "hullcheck/checklang/interpreter.h"

#include <limits>
#include <sstream>
#include <utility>

#include "hullcheck/error.h"

namespace hullcheck::checklang {

namespace {

int64_t WrapAdd(int64_t a, int64_t b) {
  return static_cast<int64_t>(static_cast<uint64_t>(a) +
                              static_cast<uint64_t>(b));
}
int64_t WrapSub(int64_t a, int64_t b) {
  return static_cast<int64_t>(static_cast<uint64_t>(a) -
                              static_cast<uint64_t>(b));
}
int64_t WrapMul(int64_t a, int64_t b) {
  return static_cast<int64_t>(static_cast<uint64_t>(a) *
                              static_cast<uint64_t>(b));
}
int64_t WrapNeg(int64_t a) { return WrapSub(0, a); }

enum class Flow { kNormal, kBreak, kReturn };

struct Abort {
  RunStatus status;
  std::string message;
  std::optional<BoundsReport> report;
};

struct TargetStats {
  uint64_t accesses = 0;
  __int128 worst = std::numeric_limits<int64_t>::min();
  std::vector<int64_t> worst_terms;
};

struct OpenScope {
  std::string scope;
  std::map<std::string, int64_t> candidates;
  std::vector<int64_t> tc_start;
  uint64_t early_exits_at_entry = 0;
  size_t heap_at_entry = 0;
  std::map<int, uint64_t> resizes_at_entry;  // by visible array slot
  std::map<int, TargetStats> targets;        // by slot
};

struct SlotBypass {
  int level = 0;
  int64_t baseline = -1;  // -1: take the length at the first allocation
  bool revoked = false;

  bool active() const { return level > 0 && !revoked; }
};

struct Frame {
  const FunctionDef* fn = nullptr;
  FunctionLedger* ledger = nullptr;
  std::vector<int64_t> slots;
  std::vector<SlotBypass> bypass;
  std::vector<int> tc_slots;
  int64_t ret = 0;
  uint64_t early_exits = 0;
  int loop_depth = 0;
  std::vector<OpenScope> scopes;
};

struct ResolvedTarget {
  std::string target;
  int slot = -1;
  std::vector<std::string> vars;
};

struct FunctionPlan {
  std::vector<ResolvedTarget> function_targets;
  std::map<int, std::vector<ResolvedTarget>> loop_targets;
};

std::string LoopScope(int loop_id) { return "loop:" + std::to_string(loop_id); }

class Interpreter {
 public:
  Interpreter(const Program& program, const RunOptions& options,
              const nlohmann::json& inputs, RunResult* result)
      : prog_(program), opt_(options), inputs_(inputs), res_(result) {}

  void Run() {
    const FunctionDef* main_fn = prog_.Find("main");
    if (main_fn == nullptr) throw UsageError("program has no main()");
    if (!main_fn->params.empty()) throw UsageError("main() takes no parameters");
    if (!inputs_.is_object()) throw UsageError("inputs must be a JSON object");
    try {
      Call(*main_fn, {}, 0, /*is_main=*/true);
      res_->status = RunStatus::kOk;
      DumpMemory();
    } catch (Abort& a) {
      res_->status = a.status;
      res_->error = a.message;
      res_->violation = a.report;
    }
    res_->output = out_.str();
  }

 private:
  [[noreturn]] void Fault(const std::string& message, int line) {
    throw Abort{RunStatus::kRuntimeError,
                "line " + std::to_string(line) + ": " + message,
                std::nullopt};
  }

  void Step(Frame& f, int line) {
    ++f.ledger->statements;
    if (++steps_ > opt_.max_steps) Fault("step limit exceeded", line);
  }

  std::vector<int64_t>& ArrayOf(const Frame& f, int slot, int line) {
    int64_t id = f.slots[slot];
    if (id < 0) {
      Fault("array '" + f.fn->slots[slot].name + "' is not allocated", line);
    }
    return heap_[id];
  }

  int64_t NewArray(int64_t length, int line) {
    if (length < 0) Fault("negative array length " + std::to_string(length), line);
    if (length > (int64_t{1} << 28)) Fault("array length too large", line);
    heap_.emplace_back(static_cast<size_t>(length), 0);
    resizes_.push_back(0);
    return static_cast<int64_t>(heap_.size()) - 1;
  }

  // Revokes bypasses whose array shrank below its decision-time length.
  void ShrinkGuard(int64_t array_id, int64_t new_length) {
    for (Frame* fr : stack_) {
      for (size_t s = 0; s < fr->bypass.size(); ++s) {
        SlotBypass& b = fr->bypass[s];
        if (b.level == 0 || fr->fn->slots[s].type != Type::kArray) continue;
        if (fr->slots[s] != array_id) continue;
        if (b.baseline >= 0 && new_length < b.baseline) b.revoked = true;
      }
    }
  }

  // --- Access checking ----------------------------------------------------

  int64_t& Access(Frame& f, int slot, int64_t index, int site, int line,
                  const std::vector<int64_t>* terms) {
    std::vector<int64_t>& arr = ArrayOf(f, slot, line);
    const int64_t length = static_cast<int64_t>(arr.size());
    const bool in_bounds = index >= 0 && index < length;
    auto report = [&] {
      BoundsReport r;
      r.site = site;
      r.func = f.fn->name;
      r.array = f.fn->slots[slot].name;
      r.line = line;
      r.index = index;
      r.length = length;
      return r;
    };
    if (opt_.mode == Mode::kChop && f.bypass[slot].active()) {
      ++f.ledger->checks_bypassed;
      if (!in_bounds) {
        if (opt_.verify_bypassed) ++f.ledger->false_positives;
        BoundsReport r = report();
        throw Abort{RunStatus::kFalsePositive,
                    "bypassed access failed re-verification: " + r.ToString(),
                    r};
      }
    } else {
      ++f.ledger->checks_performed;
      if (!in_bounds) {
        BoundsReport r = report();
        throw Abort{RunStatus::kBoundsViolation, "bounds violation: " + r.ToString(),
                    r};
      }
    }
    if (opt_.collect_traces) {
      __int128 peak = std::numeric_limits<int64_t>::min();
      if (terms != nullptr) {
        __int128 sum = 0;
        for (int64_t t : *terms) {
          sum += t;
          if (sum > peak) peak = sum;
        }
      }
      for (OpenScope& sc : f.scopes) {
        TargetStats& st = sc.targets[slot];
        ++st.accesses;
        if (terms != nullptr && (st.worst_terms.empty() || peak > st.worst)) {
          st.worst = peak;
          st.worst_terms = *terms;
        }
      }
    }
    return arr[static_cast<size_t>(index)];
  }

  void CollectTerms(Frame& f, const Expr& e, bool negate,
                    std::vector<int64_t>* terms) {
    if (e.kind == ExprKind::kBinary &&
        (e.binop == BinOp::kAdd || e.binop == BinOp::kSub)) {
      CollectTerms(f, *e.args[0], negate, terms);
      CollectTerms(f, *e.args[1], e.binop == BinOp::kSub ? !negate : negate,
                   terms);
      return;
    }
    int64_t v = Eval(f, e);
    terms->push_back(negate ? WrapNeg(v) : v);
  }

  int64_t& IndexRef(Frame& f, int slot, const Expr& index_expr, int site,
                    int line) {
    if (!opt_.collect_traces) {
      int64_t index = Eval(f, index_expr);
      return Access(f, slot, index, site, line, nullptr);
    }
    std::vector<int64_t> terms;
    CollectTerms(f, index_expr, false, &terms);
    int64_t index = 0;
    for (int64_t t : terms) index = WrapAdd(index, t);
    return Access(f, slot, index, site, line, &terms);
  }

  // --- Expressions --------------------------------------------------------

  int64_t Eval(Frame& f, const Expr& e) {
    switch (e.kind) {
      case ExprKind::kIntLit:
        return e.value;
      case ExprKind::kVar:
        return f.slots[e.slot];
      case ExprKind::kIndex:
        return IndexRef(f, e.slot, *e.args[0], e.site, e.line);
      case ExprKind::kLen:
        return static_cast<int64_t>(ArrayOf(f, e.slot, e.line).size());
      case ExprKind::kCall:
        return EvalCall(f, e);
      case ExprKind::kUnary: {
        int64_t v = Eval(f, *e.args[0]);
        return e.unop == UnOp::kNeg ? WrapNeg(v) : (v == 0 ? 1 : 0);
      }
      case ExprKind::kBinary:
        return EvalBinary(f, e);
    }
    return 0;
  }

  int64_t EvalBinary(Frame& f, const Expr& e) {
    if (e.binop == BinOp::kAnd) {
      return Eval(f, *e.args[0]) != 0 && Eval(f, *e.args[1]) != 0 ? 1 : 0;
    }
    if (e.binop == BinOp::kOr) {
      return Eval(f, *e.args[0]) != 0 || Eval(f, *e.args[1]) != 0 ? 1 : 0;
    }
    int64_t a = Eval(f, *e.args[0]);
    int64_t b = Eval(f, *e.args[1]);
    switch (e.binop) {
      case BinOp::kAdd: return WrapAdd(a, b);
      case BinOp::kSub: return WrapSub(a, b);
      case BinOp::kMul: return WrapMul(a, b);
      case BinOp::kDiv:
        if (b == 0) Fault("division by zero", e.line);
        if (b == -1) return WrapNeg(a);
        return a / b;
      case BinOp::kMod:
        if (b == 0) Fault("division by zero", e.line);
        if (b == -1) return 0;
        return a % b;
      case BinOp::kLt: return a < b;
      case BinOp::kLe: return a <= b;
      case BinOp::kGt: return a > b;
      case BinOp::kGe: return a >= b;
      case BinOp::kEq: return a == b;
      case BinOp::kNe: return a != b;
      default: break;
    }
    return 0;
  }

  int64_t EvalCall(Frame& f, const Expr& e) {
    const FunctionDef* callee = prog_.Find(e.name);
    std::vector<int64_t> args;
    args.reserve(e.args.size());
    for (size_t i = 0; i < e.args.size(); ++i) {
      if (callee->params[i].type == Type::kArray) {
        int64_t id = f.slots[e.args[i]->slot];
        if (id < 0) Fault("array argument is not allocated", e.line);
        args.push_back(id);
      } else {
        args.push_back(Eval(f, *e.args[i]));
      }
    }
    return Call(*callee, args, e.line, /*is_main=*/false);
  }

  // --- Calls and scopes ---------------------------------------------------

  const FunctionPlan& PlanFor(const FunctionDef& fn) {
    auto it = plans_.find(&fn);
    if (it != plans_.end()) return it->second;
    FunctionPlan plan;
    if (opt_.mode == Mode::kChop && opt_.oracle != nullptr) {
      for (ScopeTarget& t : opt_.oracle->Targets(fn.name, "function")) {
        int slot = fn.UniqueSlot(t.target);
        if (slot < 0 || fn.slots[slot].type != Type::kArray) continue;
        plan.function_targets.push_back({t.target, slot, std::move(t.vars)});
      }
      for (size_t id = 0; id < prog_.loops.size(); ++id) {
        const LoopInfo& loop = prog_.loops[id];
        if (loop.func != fn.name) continue;
        for (ScopeTarget& t : opt_.oracle->Targets(fn.name, LoopScope(id))) {
          auto v = loop.visible.find(t.target);
          if (v == loop.visible.end() ||
              fn.slots[v->second].type != Type::kArray) {
            continue;
          }
          plan.loop_targets[static_cast<int>(id)].push_back(
              {t.target, v->second, std::move(t.vars)});
        }
      }
    }
    return plans_.emplace(&fn, std::move(plan)).first->second;
  }

  // Raw query values from the named variables in `names` (name -> slot).
  std::map<std::string, int64_t> RawValues(
      const Frame& f, const std::vector<std::string>& vars,
      const std::map<std::string, int>& names) {
    std::map<std::string, int64_t> raw;
    for (const std::string& var : vars) {
      bool is_len = var.size() > 5 && var.compare(0, 4, "len(") == 0 &&
                    var.back() == ')';
      std::string name = is_len ? var.substr(4, var.size() - 5) : var;
      auto it = names.find(name);
      if (it == names.end()) continue;
      const SlotInfo& info = f.fn->slots[it->second];
      int64_t value = f.slots[it->second];
      if (is_len) {
        if (info.type != Type::kArray || value < 0) continue;
        raw[var] = static_cast<int64_t>(heap_[value].size());
      } else if (info.type == Type::kInt) {
        raw[var] = value;
      }
    }
    return raw;
  }

  std::map<std::string, int64_t> Candidates(
      const Frame& f, const std::map<std::string, int>& names) {
    std::map<std::string, int64_t> out;
    for (const auto& [name, slot] : names) {
      const SlotInfo& info = f.fn->slots[slot];
      if (info.is_trip_counter) continue;
      int64_t value = f.slots[slot];
      if (info.type == Type::kInt) {
        out[name] = value;
      } else if (value >= 0) {
        out["len(" + name + ")"] = static_cast<int64_t>(heap_[value].size());
      }
    }
    return out;
  }

  void OpenScopeRecord(Frame& f, std::string scope,
                       const std::map<std::string, int>& names) {
    OpenScope sc;
    sc.scope = std::move(scope);
    sc.candidates = Candidates(f, names);
    for (int slot : f.tc_slots) sc.tc_start.push_back(f.slots[slot]);
    sc.early_exits_at_entry = f.early_exits;
    sc.heap_at_entry = heap_.size();
    for (const auto& [name, slot] : names) {
      int64_t id = f.slots[slot];
      if (f.fn->slots[slot].type == Type::kArray && id >= 0) {
        sc.resizes_at_entry[slot] = resizes_[id];
      }
    }
    f.scopes.push_back(std::move(sc));
  }

  void CloseScopeRecord(Frame& f, bool passed) {
    OpenScope sc = std::move(f.scopes.back());
    f.scopes.pop_back();
    for (auto& [slot, st] : sc.targets) {
      RawScopeRecord rec;
      rec.func = f.fn->name;
      rec.scope = sc.scope;
      rec.target = f.fn->slots[slot].name;
      rec.candidates = sc.candidates;
      for (size_t k = 0; k < f.tc_slots.size(); ++k) {
        rec.trip_counts[f.fn->trip_counters[k]] =
            WrapSub(f.slots[f.tc_slots[k]], sc.tc_start[k]);
      }
      rec.accesses = st.accesses;
      rec.all_checks_passed = passed;
      rec.complete = f.early_exits == sc.early_exits_at_entry;
      int64_t id = f.slots[slot];
      if (id >= static_cast<int64_t>(sc.heap_at_entry)) {
        rec.resized = resizes_[id] > 0;
      } else if (id >= 0) {
        auto it = sc.resizes_at_entry.find(slot);
        rec.resized = it == sc.resizes_at_entry.end() ||
                      it->second != resizes_[id];
      }
      rec.index_terms = std::move(st.worst_terms);
      res_->records.push_back(std::move(rec));
    }
  }

  std::map<std::string, int> ParamNames(const FunctionDef& fn) {
    std::map<std::string, int> names;
    for (const Param& p : fn.params) names[p.name] = p.slot;
    return names;
  }

  int64_t Call(const FunctionDef& fn, const std::vector<int64_t>& args,
               int line, bool is_main) {
    if (static_cast<int>(stack_.size()) >= opt_.max_depth) {
      Fault("call depth limit exceeded", line);
    }
    Frame f;
    f.fn = &fn;
    f.ledger = &res_->ledger.For(fn.name);
    ++f.ledger->calls;
    f.slots.assign(fn.slots.size(), 0);
    for (size_t s = 0; s < fn.slots.size(); ++s) {
      if (fn.slots[s].type == Type::kArray) f.slots[s] = -1;
    }
    f.bypass.assign(fn.slots.size(), {});
    for (const std::string& tc : fn.trip_counters) {
      f.tc_slots.push_back(fn.UniqueSlot(tc));
    }
    for (size_t i = 0; i < fn.params.size(); ++i) {
      f.slots[fn.params[i].slot] = args[i];
    }
    for (const Param& p : fn.params) {
      if (p.length_var.empty()) continue;
      int64_t length = static_cast<int64_t>(heap_[f.slots[p.slot]].size());
      int64_t bound = 0;
      for (const Param& q : fn.params) {
        if (q.name == p.length_var) bound = f.slots[q.slot];
      }
      if (length != bound) {
        Fault("length binding mismatch in call to " + fn.name + ": len(" +
                  p.name + ") = " + std::to_string(length) + " but " +
                  p.length_var + " = " + std::to_string(bound),
              line);
      }
    }
    stack_.push_back(&f);
    const std::map<std::string, int> params = ParamNames(fn);
    if (opt_.mode == Mode::kChop) {
      for (const ResolvedTarget& t : PlanFor(fn).function_targets) {
        if (!opt_.oracle->IsSafe(fn.name, "function", t.target,
                                 RawValues(f, t.vars, params))) {
          continue;
        }
        SlotBypass& b = f.bypass[t.slot];
        b.level = 1;
        b.revoked = false;
        int64_t id = f.slots[t.slot];
        b.baseline = id >= 0 ? static_cast<int64_t>(heap_[id].size()) : -1;
      }
    }
    if (opt_.collect_traces) OpenScopeRecord(f, "function", params);
    try {
      for (const StmtPtr& s : fn.body.stmts) {
        Flow flow = Exec(f, *s);
        if (flow == Flow::kNormal) continue;
        // Returning from inside a compound statement skips code that a
        // complete activation would have run.
        if (s->kind != StmtKind::kReturn) ++f.early_exits;
        break;
      }
    } catch (Abort&) {
      if (opt_.collect_traces) {
        while (!f.scopes.empty()) CloseScopeRecord(f, false);
      }
      stack_.pop_back();
      throw;
    }
    if (opt_.collect_traces) CloseScopeRecord(f, true);
    stack_.pop_back();
    if (is_main) {
      main_slots_ = f.slots;
      main_fn_ = &fn;
    }
    return f.ret;
  }

  // --- Statements ---------------------------------------------------------

  Flow ExecBlock(Frame& f, const Block& b) {
    for (const StmtPtr& s : b.stmts) {
      Flow flow = Exec(f, *s);
      if (flow != Flow::kNormal) return flow;
    }
    return Flow::kNormal;
  }

  void AllocInto(Frame& f, int slot, int64_t length, int line) {
    int64_t id = NewArray(length, line);
    f.slots[slot] = id;
    SlotBypass& b = f.bypass[slot];
    if (b.level > 0) {
      if (b.baseline < 0) {
        b.baseline = length;
      } else if (length < b.baseline) {
        b.revoked = true;
      }
    }
  }

  Flow Exec(Frame& f, const Stmt& s) {
    if (s.kind == StmtKind::kTripCount) {
      f.slots[s.slot] = WrapAdd(f.slots[s.slot], 1);
      return Flow::kNormal;
    }
    Step(f, s.line);
    switch (s.kind) {
      case StmtKind::kDeclInt:
        f.slots[s.slot] = s.value ? Eval(f, *s.value) : 0;
        return Flow::kNormal;
      case StmtKind::kDeclArray:
        AllocInto(f, s.slot, Eval(f, *s.value), s.line);
        return Flow::kNormal;
      case StmtKind::kAssign:
        f.slots[s.slot] = Eval(f, *s.value);
        return Flow::kNormal;
      case StmtKind::kArrayWrite: {
        // The value is evaluated first so that a call in it cannot resize
        // the array between the check and the store.
        int64_t v = Eval(f, *s.value);
        IndexRef(f, s.slot, *s.index, s.site, s.line) = v;
        return Flow::kNormal;
      }
      case StmtKind::kResize: {
        std::vector<int64_t>& arr = ArrayOf(f, s.slot, s.line);
        int64_t length = Eval(f, *s.value);
        if (length < 0) {
          Fault("negative array length " + std::to_string(length), s.line);
        }
        if (length > (int64_t{1} << 28)) Fault("array length too large", s.line);
        arr.resize(static_cast<size_t>(length), 0);
        ++resizes_[f.slots[s.slot]];
        ShrinkGuard(f.slots[s.slot], length);
        return Flow::kNormal;
      }
      case StmtKind::kIf:
        if (Eval(f, *s.value) != 0) return ExecBlock(f, s.body);
        if (s.has_else) return ExecBlock(f, s.else_body);
        return Flow::kNormal;
      case StmtKind::kWhile:
      case StmtKind::kFor:
        return ExecLoop(f, s);
      case StmtKind::kSwitch: {
        int64_t v = Eval(f, *s.value);
        const SwitchCase* chosen = nullptr;
        for (const SwitchCase& c : s.cases) {
          for (int64_t label : c.labels) {
            if (label == v) chosen = &c;
          }
        }
        if (chosen == nullptr) {
          for (const SwitchCase& c : s.cases) {
            if (c.is_default) chosen = &c;
          }
        }
        if (chosen == nullptr) return Flow::kNormal;
        Flow flow = ExecBlock(f, chosen->body);
        return flow == Flow::kBreak ? Flow::kNormal : flow;
      }
      case StmtKind::kBreak:
        return Flow::kBreak;
      case StmtKind::kReturn:
        f.ret = s.value ? Eval(f, *s.value) : 0;
        if (f.loop_depth > 0) ++f.early_exits;
        return Flow::kReturn;
      case StmtKind::kExpr:
        Eval(f, *s.value);
        return Flow::kNormal;
      case StmtKind::kInputInt: {
        auto it = inputs_.find(s.name);
        if (it == inputs_.end() || !it->is_number_integer()) {
          Fault("unbound input '" + s.name + "'", s.line);
        }
        f.slots[s.slot] = it->get<int64_t>();
        return Flow::kNormal;
      }
      case StmtKind::kInputArray: {
        auto it = inputs_.find(s.name);
        if (it == inputs_.end()) Fault("unbound input '" + s.name + "'", s.line);
        std::vector<int64_t> data;
        if (it->is_string()) {
          for (unsigned char c : it->get<std::string>()) data.push_back(c);
        } else if (it->is_array()) {
          for (const auto& v : *it) {
            if (!v.is_number_integer()) {
              Fault("input '" + s.name + "' has a non-integer element", s.line);
            }
            data.push_back(v.get<int64_t>());
          }
        } else {
          Fault("input '" + s.name + "' is not an array or string", s.line);
        }
        int64_t length = static_cast<int64_t>(data.size());
        AllocInto(f, s.slot, length, s.line);
        heap_[f.slots[s.slot]] = std::move(data);
        return Flow::kNormal;
      }
      case StmtKind::kPrint: {
        bool first = true;
        for (const ExprPtr& e : s.exprs) {
          if (!first) out_ << ' ';
          first = false;
          if (e->kind == ExprKind::kVar && e->type == Type::kArray) {
            const std::vector<int64_t>& arr = ArrayOf(f, e->slot, s.line);
            out_ << '[';
            for (size_t i = 0; i < arr.size(); ++i) {
              if (i > 0) out_ << ' ';
              out_ << arr[i];
            }
            out_ << ']';
          } else {
            out_ << Eval(f, *e);
          }
        }
        out_ << '\n';
        return Flow::kNormal;
      }
      case StmtKind::kBlock:
        return ExecBlock(f, s.body);
      case StmtKind::kTripCount:
        break;
    }
    return Flow::kNormal;
  }

  Flow ExecLoop(Frame& f, const Stmt& s) {
    if (s.init) Exec(f, *s.init);
    const LoopInfo& info = prog_.loops[s.loop_id];

    // Hoisted region queries for targets not bypassed at function level.
    std::vector<std::pair<int, SlotBypass>> saved;
    if (opt_.mode == Mode::kChop) {
      const FunctionPlan& plan = PlanFor(*f.fn);
      auto it = plan.loop_targets.find(s.loop_id);
      if (it != plan.loop_targets.end()) {
        for (const ResolvedTarget& t : it->second) {
          if (f.bypass[t.slot].active()) continue;
          if (!opt_.oracle->IsSafe(f.fn->name, LoopScope(s.loop_id), t.target,
                                   RawValues(f, t.vars, info.visible))) {
            continue;
          }
          saved.emplace_back(t.slot, f.bypass[t.slot]);
          SlotBypass& b = f.bypass[t.slot];
          b.level = 1;
          b.revoked = false;
          int64_t id = f.slots[t.slot];
          b.baseline = id >= 0 ? static_cast<int64_t>(heap_[id].size()) : -1;
        }
      }
    }
    if (opt_.collect_traces) {
      OpenScopeRecord(f, LoopScope(s.loop_id), info.visible);
    }
    ++f.loop_depth;
    Flow result = Flow::kNormal;
    uint64_t iterations = 0;
    while (true) {
      if (++steps_ > opt_.max_steps) Fault("step limit exceeded", s.line);
      if (s.value && Eval(f, *s.value) == 0) {
        // A loop that never ran also leaves its scope's records incomplete.
        if (iterations == 0) ++f.early_exits;
        break;
      }
      ++iterations;
      Flow flow = ExecBlock(f, s.body);
      if (flow == Flow::kBreak) {
        ++f.early_exits;
        break;
      }
      if (flow == Flow::kReturn) {
        result = Flow::kReturn;
        break;
      }
      if (s.update) Exec(f, *s.update);
    }
    --f.loop_depth;
    if (opt_.collect_traces) CloseScopeRecord(f, true);
    for (auto it = saved.rbegin(); it != saved.rend(); ++it) {
      f.bypass[it->first] = it->second;
    }
    return result;
  }

  void DumpMemory() {
    std::ostringstream mem;
    for (size_t id = 0; id < heap_.size(); ++id) {
      mem << "array#" << id << " len=" << heap_[id].size() << ":";
      for (int64_t v : heap_[id]) mem << ' ' << v;
      mem << '\n';
    }
    if (main_fn_ != nullptr) {
      for (size_t s = 0; s < main_fn_->slots.size(); ++s) {
        const SlotInfo& info = main_fn_->slots[s];
        if (info.type != Type::kInt || info.is_trip_counter) continue;
        mem << info.name << '@' << s << '=' << main_slots_[s] << '\n';
      }
    }
    res_->memory = mem.str();
  }

  const Program& prog_;
  const RunOptions& opt_;
  const nlohmann::json& inputs_;
  RunResult* res_;
  std::ostringstream out_;
  std::vector<std::vector<int64_t>> heap_;
  std::vector<uint64_t> resizes_;  // per array id
  std::vector<Frame*> stack_;
  std::map<const FunctionDef*, FunctionPlan> plans_;
  uint64_t steps_ = 0;
  std::vector<int64_t> main_slots_;
  const FunctionDef* main_fn_ = nullptr;
};

}  // namespace

const char* RunStatusName(RunStatus status) {
  switch (status) {
    case RunStatus::kOk: return "ok";
    case RunStatus::kBoundsViolation: return "bounds-violation";
    case RunStatus::kFalsePositive: return "false-positive";
    case RunStatus::kRuntimeError: return "runtime-error";
  }
  return "?";
}

std::string BoundsReport::ToString() const {
  return "site " + std::to_string(site) + " (" + func + ", line " +
         std::to_string(line) + "): " + array + "[" + std::to_string(index) +
         "] with length " + std::to_string(length);
}

RunResult Run(const Program& program, const nlohmann::json& inputs,
              const RunOptions& options) {
  if (options.mode == Mode::kChop && options.oracle == nullptr) {
    throw UsageError("chop mode needs a bypass oracle");
  }
  RunResult result;
  Interpreter(program, options, inputs, &result).Run();
  return result;
}

}  // namespace hullcheck::checklang
