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


#ifndef HULLCHECK_DEPGRAPH_H_
#define HULLCHECK_DEPGRAPH_H_

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "hullcheck/checklang/ast.h"
#include "hullcheck/checklang/interpreter.h"
#include "hullcheck/safe_region.h"

namespace hullcheck::depgraph {

enum class NodeKind { kArray, kVariable, kTripCount };
enum class Sign { kPositive, kNegative, kUnknown };

// Justification of an edge.
enum class Rule {
  kAssign,      // E1: A := c*B + ...
  kParam,       // E2: call argument <-> callee parameter
  kTripCount,   // E3: trip count -> variable accumulated in its arm
  kLoopBound,   // E3: loop condition -> iterator or body trip count
  kProfile,     // E3: exact linear fit of trip counts over profiled runs
  kIndex,       // E4: index variable -> array
  kBound,       // array length source -> array
  kControl,     // branch condition -> state written or read in the arm
};

const char* SignText(Sign sign);
const char* RuleName(Rule rule);
Sign Multiply(Sign a, Sign b);

// Name of the pseudo node standing for array contents and call results.
inline constexpr const char kContentNode[] = "<content>";

struct Node {
  NodeKind kind = NodeKind::kVariable;
  std::string name;
};

struct Edge {
  std::string from;
  std::string to;
  Sign sign = Sign::kUnknown;
  Rule rule = Rule::kAssign;
  int line = 0;
  int loop_id = -1;  // innermost loop around the justifying statement
  bool nonlinear = false;

  std::string ToString() const;
};

// c_1*v_1 + ... + c_k*v_k + constant. Variables include "len(a)" terms.
struct LinearForm {
  std::map<std::string, int64_t> coeffs;
  int64_t constant = 0;
  bool linear = true;
  bool reads_content = false;   // array element read or call result
  std::set<std::string> scalars;  // variables used outside element reads
};

LinearForm AnalyzeExpr(const checklang::Expr& e);

struct TripCounter {
  std::string name;
  int arm_id = -1;
  int loop_id = -1;        // innermost loop enclosing the arm
  int line = 0;
  bool loop_body = false;  // the arm is the body of `loop_id`
  bool data_dependent = false;
  std::map<std::string, int64_t> increments;  // accumulated var -> step
};

struct LoopFacts {
  int parent = -1;
  int line = 0;
  std::map<std::string, int> visible;
  std::set<std::string> iterators;
  bool bound_recognized = false;
  // The condition compares iterators against variables (or contents).
  bool variable_bound = false;
  bool variable_start = false;
  // Variables assigned in the body, excluding the for-update.
  std::set<std::string> body_assigned;
};

struct SiteFacts {
  int site = -1;
  std::string target;
  int line = 0;
  int loop_id = -1;
  LinearForm index;
  // -2: statement at the top of the function body; L: directly in the body
  // of loop L; -1 otherwise.
  int container = -1;
  bool content_conditional = false;
};

// y = sum(terms) + constant, where y = sum(step * counter) over the
// counters of one accumulated variable.
struct ProfileFit {
  std::string var;
  std::vector<std::pair<std::string, int64_t>> counters;  // name, step
  std::vector<std::pair<std::string, Rational>> terms;    // candidate, coeff
  Rational constant;
};

class DependencyGraph {
 public:
  const std::string& function() const { return function_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<TripCounter>& trip_counters() const { return tcs_; }
  const std::map<int, LoopFacts>& loops() const { return loops_; }
  const std::vector<SiteFacts>& sites() const { return sites_; }
  // Reasons a node cannot take part in region inference.
  const std::map<std::string, std::vector<std::string>>& taints() const {
    return taints_;
  }
  const std::vector<std::string>& params() const { return params_; }
  const std::map<std::string, std::string>& bindings() const {
    return bindings_;
  }
  // Names in declaration order.
  const std::vector<std::string>& declared() const { return declared_; }
  const std::set<std::string>& assigned() const { return assigned_; }
  // Length expressions of arrays allocated in the body.
  const std::map<std::string, LinearForm>& allocations() const {
    return allocations_;
  }
  // Variables with a definition that can lower them below zero.
  const std::set<std::string>& may_be_negative() const { return negative_; }
  const std::vector<ProfileFit>& fits() const { return fits_; }

  bool HasNode(const std::string& name) const;
  NodeKind KindOf(const std::string& name) const;

  // One edge per line: `from -sign-> to (rule, line)`.
  std::string Dump() const;

 private:
  friend class Builder;
  friend DependencyGraph RefineWithProfile(
      const DependencyGraph& dg,
      const std::vector<checklang::RawScopeRecord>& records);

  void AddNode(NodeKind kind, const std::string& name);
  void AddEdge(Edge edge);
  void Taint(const std::string& name, const std::string& reason);

  std::string function_;
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::vector<TripCounter> tcs_;
  std::map<int, LoopFacts> loops_;
  std::vector<SiteFacts> sites_;
  std::map<std::string, std::vector<std::string>> taints_;
  std::vector<std::string> params_;
  std::map<std::string, std::string> bindings_;  // array param -> length var
  std::vector<std::string> declared_;
  std::set<std::string> assigned_;  // assigned anywhere in the body
  std::map<std::string, LinearForm> allocations_;
  std::set<std::string> negative_;
  std::vector<ProfileFit> fits_;
};

// Builds the graph of one function. Trip counters are named after the names
// `fn` already uses (tc1, tc2, ... unless taken).
DependencyGraph BuildDg(const checklang::Program& program,
                        const checklang::FunctionDef& fn);
std::map<std::string, DependencyGraph> BuildAll(
    const checklang::Program& program);

// Adds profile-fit edges into data-dependent trip counters from the
// function-scope records of an instrumented full-check run. Counters without
// an exact fit are tainted.
DependencyGraph RefineWithProfile(
    const DependencyGraph& dg,
    const std::vector<checklang::RawScopeRecord>& records);

// False when the record's trip counts contradict a profile fit whose
// counters lie in the record's scope. Such records must not grow a region
// whose signature relies on the fit.
bool FitsHold(const DependencyGraph& dg,
              const checklang::RawScopeRecord& record);

struct AffectingSet {
  std::string func;
  std::string scope;   // "function" or "loop:<id>"
  std::string target;
  bool eligible = false;
  std::vector<SignatureVar> vars;
  std::vector<std::string> reasons;

  // "(func,target):(v1:+,v2:-)"; the scope is appended for loops.
  std::string ToString() const;
};

// Pointer-affecting variables of `target` in `scope`. Throws UsageError when
// the function has no access to `target`.
AffectingSet ComputeAffectingSet(const DependencyGraph& dg,
                                 const std::string& target,
                                 const std::string& scope);

// Every (scope, target) pair with at least one access in the scope.
std::vector<AffectingSet> AllAffectingSets(const DependencyGraph& dg);

// Copy of `program` with a counter increment at the start of every
// trip-counted arm. Counter slots are marked as trip counters.
checklang::Program InstrumentTripCounts(
    const checklang::Program& program,
    const std::map<std::string, DependencyGraph>& dgs);

}  // namespace hullcheck::depgraph

#endif  // HULLCHECK_DEPGRAPH_H_
