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

#include <string>

#include "gtest/gtest.h"
#include "hullcheck/checklang/interpreter.h"
#include "hullcheck/checklang/parser.h"
#include "hullcheck/error.h"
#include "test_util.h"

namespace hullcheck::checklang {
namespace {

using hullcheck::testing::DecodeCString;
using hullcheck::testing::ReadSource;
using nlohmann::json;

RunResult FullCheck(const Program& p, const json& inputs) {
  RunOptions opt;
  opt.collect_traces = true;
  return checklang::Run(p, inputs, opt);
}

TEST(ParseTest, FooStructure) {
  Program p = Parse(ReadSource("programs/foo.cl"));
  const FunctionDef* foo = p.Find("foo");
  ASSERT_NE(foo, nullptr);
  ASSERT_EQ(foo->params.size(), 5u);
  EXPECT_EQ(foo->params[1].length_var, "dsize");
  const Stmt* loop = nullptr;
  for (const StmtPtr& s : foo->body.stmts) {
    if (s->kind == StmtKind::kFor) loop = s.get();
  }
  ASSERT_NE(loop, nullptr);
  ASSERT_EQ(loop->body.stmts.size(), 1u);
  EXPECT_EQ(loop->body.stmts[0]->kind, StmtKind::kSwitch);
  EXPECT_EQ(loop->body.stmts[0]->cases.size(), 3u);
}

TEST(ParseTest, EmptySourceIsEmptyProgram) {
  Program p = Parse("");
  EXPECT_TRUE(p.functions.empty());
  EXPECT_TRUE(p.sites.empty());
}

TEST(ParseTest, MissingExpressionReportsFollowingToken) {
  try {
    Parse("func main() {\n  int x;\n  x = ;\n}\n");
    FAIL() << "expected a syntax error";
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line(), 3);
    EXPECT_EQ(e.column(), 7);
  }
}

TEST(ParseTest, StaticErrors) {
  EXPECT_THROW(Parse("func f() {} func f() {}"), SyntaxError);
  EXPECT_THROW(Parse("func f() { x = 1; }"), SyntaxError);
  EXPECT_THROW(Parse("func f() { int y = x; int x = 0; }"), SyntaxError);
  EXPECT_THROW(Parse("func f() { int x = 0; int x = 1; }"), SyntaxError);
  EXPECT_THROW(Parse("func f() { break; }"), SyntaxError);
  EXPECT_THROW(Parse("func f(int a) {} func g() { f(); }"), SyntaxError);
  EXPECT_THROW(Parse("func f() { int a = 0; a[0] = 1; }"), SyntaxError);
  EXPECT_THROW(Parse("func f(array<int>[n] a) {}"), SyntaxError);
  EXPECT_THROW(Parse("func f() { int x = 'ab'; }"), SyntaxError);
}

TEST(ParseTest, SitesAreNumberedInSourceOrder) {
  Program p = Parse(
      "func main() { array<int> a = alloc(3); array<int> b = alloc(3);\n"
      "a[b[0]] = b[1] + a[2]; }");
  ASSERT_EQ(p.sites.size(), 4u);
  EXPECT_EQ(p.sites[0].array, "a");
  EXPECT_TRUE(p.sites[0].is_write);
  EXPECT_EQ(p.sites[1].array, "b");
  EXPECT_EQ(p.sites[2].array, "b");
  EXPECT_EQ(p.sites[3].array, "a");
  EXPECT_EQ(p.sites[3].func, "main");
}

TEST(RunTest, FooEscapesAndRecordsEntryPoint) {
  Program p = Parse(ReadSource("programs/foo.cl"));
  RunResult r = FullCheck(p, {{"src", "a<b>"}, {"dsize", 12}});
  ASSERT_TRUE(r.ok()) << r.error;
  EXPECT_EQ(DecodeCString(r.output), "a&lt;b&gt;");
  bool found = false;
  for (const RawScopeRecord& rec : r.records) {
    if (rec.func == "foo" && rec.scope == "function" && rec.target == "dst") {
      found = true;
      EXPECT_EQ(rec.candidates.at("ssize"), 4);
      EXPECT_EQ(rec.candidates.at("snum"), 2);
      EXPECT_EQ(rec.candidates.at("dsize"), 12);
      EXPECT_TRUE(rec.all_checks_passed);
      EXPECT_EQ(rec.accesses, 11u);
    }
  }
  EXPECT_TRUE(found);
  // Four switch reads, two default-arm reads, eleven writes.
  EXPECT_EQ(r.ledger.functions().at("foo").checks_performed, 17u);
  EXPECT_EQ(r.ledger.functions().at("foo").calls, 1u);
}

TEST(RunTest, FooGrowsUndersizedDestination) {
  Program p = Parse(ReadSource("programs/foo.cl"));
  RunResult r = FullCheck(p, {{"src", "<<>>"}, {"dsize", 2}});
  ASSERT_TRUE(r.ok()) << r.error;
  EXPECT_EQ(DecodeCString(r.output), "&lt;&lt;&gt;&gt;");
}

TEST(RunTest, FooWithoutReallocOverflowsInLastIteration) {
  Program p = Parse(ReadSource("tests/data/foo_norealloc.cl"));
  RunResult r = FullCheck(p, {{"src", "a<b>"}, {"dsize", 9}});
  ASSERT_EQ(r.status, RunStatus::kBoundsViolation);
  ASSERT_TRUE(r.violation.has_value());
  EXPECT_EQ(r.violation->array, "dst");
  EXPECT_EQ(r.violation->index, 9);
  EXPECT_EQ(r.violation->length, 9);
  EXPECT_EQ(r.violation->func, "foo");
  for (const RawScopeRecord& rec : r.records) {
    if (rec.func == "foo") {
      EXPECT_FALSE(rec.all_checks_passed);
    }
  }
}

TEST(RunTest, EmptyArrayReadViolates) {
  Program p = Parse("func main() { array<int> a = alloc(0); print a[0]; }");
  RunResult r = FullCheck(p, json::object());
  EXPECT_EQ(r.status, RunStatus::kBoundsViolation);
  EXPECT_EQ(r.violation->site, 0);
  EXPECT_EQ(r.violation->length, 0);
}

TEST(RunTest, RuntimeErrors) {
  Program div = Parse("func main() { int z = 0; print 1 / z; }");
  EXPECT_EQ(FullCheck(div, json::object()).status, RunStatus::kRuntimeError);
  Program in = Parse("func main() { input int n; print n; }");
  RunResult r = FullCheck(in, json::object());
  EXPECT_EQ(r.status, RunStatus::kRuntimeError);
  EXPECT_NE(r.error.find("unbound input"), std::string::npos);
  Program bind = Parse(
      "func f(array<int>[n] a, int n) {} "
      "func main() { array<int> a = alloc(3); f(a, 2); }");
  EXPECT_EQ(FullCheck(bind, json::object()).status, RunStatus::kRuntimeError);
  Program loop = Parse("func main() { while (1) { } }");
  RunOptions opt;
  opt.max_steps = 1000;
  EXPECT_EQ(checklang::Run(loop, json::object(), opt).status, RunStatus::kRuntimeError);
  EXPECT_THROW(checklang::Run(Parse("func f() {}"), json::object(), opt), UsageError);
}

TEST(RunTest, Semantics) {
  Program p = Parse(R"(
    func fib(int n) {
      if (n < 2) { return n; }
      return fib(n - 1) + fib(n - 2);
    }
    func fill(array<int> a, int v) {
      for (int i = 0; i < len(a); i = i + 1) { a[i] = v + i; }
      resize(a, len(a) + 1);
    }
    func main() {
      int x = -7;
      print x / 2, x % 2, 7 / -2, !0, !5, 3 < 4 && 4 < 3, 0 || 9;
      print fib(10);
      array<int> a = alloc(3);
      fill(a, 10);
      print a, len(a);
      int s = 0;
      int k = 0;
      while (1) {
        k = k + 1;
        switch (k) {
          case 1, 2: s = s + 10; break;
          case 5: s = s + 1;
          default: s = s + 100;
        }
        if (k >= 6) { break; }
      }
      print s;
      { int y = 5; print y; }
      print 'a', '\n';
    }
  )");
  RunResult r = FullCheck(p, json::object());
  ASSERT_TRUE(r.ok()) << r.error;
  EXPECT_EQ(r.output,
            "-3 -1 -3 1 0 0 1\n55\n[10 11 12 0] 4\n321\n5\n97 10\n");
  EXPECT_NE(r.memory.find("array#0 len=4: 10 11 12 0"), std::string::npos);
  EXPECT_NE(r.memory.find("s@"), std::string::npos);
}

TEST(RunTest, IndexTermsAndCompleteness) {
  Program p = Parse(R"(
    func g(array<int> a, int b, int k) {
      while (k < 3) {
        if (a[b + k] == 9) { return 1; }
        k = k + 1;
      }
      return 0;
    }
    func main() {
      input array<int> a;
      print g(a, 2, 0), g(a, 0, 0);
    }
  )");
  RunResult r = FullCheck(p, {{"a", {1, 1, 1, 1, 9}}});
  ASSERT_TRUE(r.ok()) << r.error;
  EXPECT_EQ(r.output, "1 0\n");
  std::vector<const RawScopeRecord*> g_fn;
  for (const RawScopeRecord& rec : r.records) {
    if (rec.func == "g" && rec.scope == "function") g_fn.push_back(&rec);
  }
  ASSERT_EQ(g_fn.size(), 2u);
  // The first call returns from inside the loop on finding the 9.
  EXPECT_FALSE(g_fn[0]->complete);
  EXPECT_EQ(g_fn[0]->index_terms, (std::vector<int64_t>{2, 2}));
  EXPECT_TRUE(g_fn[1]->complete);
  EXPECT_EQ(g_fn[1]->index_terms, (std::vector<int64_t>{0, 2}));
  EXPECT_EQ(g_fn[1]->accesses, 3u);
}

}  // namespace
}  // namespace hullcheck::checklang
