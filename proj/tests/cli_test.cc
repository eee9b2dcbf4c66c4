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

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.h"
#include "hullcheck/error.h"
#include "hullcheck/trace.h"
#include "test_util.h"

namespace hullcheck::cli {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome Cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = Main(args, out, err);
  return {code, out.str(), err.str()};
}

std::string Source(const std::string& relative) {
  return std::string(HULLCHECK_SOURCE_DIR) + "/" + relative;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("hullcheck_cli_" + std::to_string(::testing::UnitTest::GetInstance()
                                                  ->random_seed()) +
            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Path(const std::string& name) const { return (dir_ / name).string(); }

  void Write(const std::string& name, const std::string& text) const {
    std::ofstream(Path(name)) << text;
  }

  fs::path dir_;
};

TEST_F(CliTest, ProfileBuildRunRoundTrip) {
  Outcome gen = Cli({"gen", "foo", "--seed", "1", "--count", "20"});
  ASSERT_EQ(gen.code, 0);
  Write("foo.jsonl", gen.out);
  Outcome p = Cli({"profile", Source("programs/foo.cl"), Path("foo.jsonl"),
                   "--trace-out", Path("t.jsonl"), "--ledger-out", Path("l.json"),
                   "--threads", "3"});
  ASSERT_EQ(p.code, 0) << p.err;
  EXPECT_NE(p.out.find("runs 20, violations 0"), std::string::npos);
  EXPECT_FALSE(trace::ReadTraceFile(Path("t.jsonl")).empty());

  ASSERT_EQ(Cli({"build", Path("t.jsonl"), "--kind", "union", "--kb", Path("u.kb")}).code, 0);
  ASSERT_EQ(Cli({"build", Path("t.jsonl"), "--kind", "hull", "--kb", Path("h.kb")}).code, 0);
  Outcome r = Cli({"run", Source("programs/foo.cl"), Path("foo.jsonl"), "--kb",
                   Path("u.kb"), "--kb", Path("h.kb"), "--report-out", Path("r.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("union bypassed"), std::string::npos);
  EXPECT_NE(r.out.find("false positives 0"), std::string::npos);
  nlohmann::json report = nlohmann::json::parse(trace::ReadFile(Path("r.json")));
  EXPECT_EQ(report["hull"]["false_positives"], 0);
  EXPECT_EQ(report["union"]["total_checks"], report["hull"]["total_checks"]);

  Outcome inspect = Cli({"kb", "inspect", Path("h.kb")});
  EXPECT_EQ(inspect.code, 0);
  EXPECT_NE(inspect.out.find("foo function dst"), std::string::npos);
}

TEST_F(CliTest, RebuildingFromSameTracesIsByteIdentical) {
  Write("in.jsonl", Cli({"gen", "foo", "--seed", "2", "--count", "15"}).out);
  ASSERT_EQ(Cli({"profile", Source("programs/foo.cl"), Path("in.jsonl"),
                 "--trace-out", Path("t.jsonl")}).code, 0);
  ASSERT_EQ(Cli({"build", Path("t.jsonl"), "--kb", Path("a.kb")}).code, 0);
  ASSERT_EQ(Cli({"build", Path("t.jsonl"), "--kb", Path("b.kb")}).code, 0);
  EXPECT_EQ(trace::ReadFile(Path("a.kb")), trace::ReadFile(Path("b.kb")));
}

TEST_F(CliTest, EmptyTracesGiveEmptyKb) {
  Write("empty.jsonl", "");
  Outcome b = Cli({"build", Path("empty.jsonl"), "--kb", Path("e.kb")});
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_NE(b.out.find("entries 0"), std::string::npos);
}

TEST_F(CliTest, ViolationExitsWithOneAndNamesSite) {
  Write("bad.json", R"({"src": "a<b>c", "dsize": 4})");
  Outcome p = Cli({"profile", Source("tests/data/foo_norealloc.cl"), Path("bad.json")});
  EXPECT_EQ(p.code, 1);
  EXPECT_NE(p.err.find("line 14"), std::string::npos);
  EXPECT_NE(p.err.find("dst[4] with length 4"), std::string::npos);
}

TEST_F(CliTest, UsageErrorsExitWithTwo) {
  EXPECT_EQ(Cli({}).code, 2);
  EXPECT_EQ(Cli({"frobnicate"}).code, 2);
  EXPECT_EQ(Cli({"profile", Source("programs/foo.cl")}).code, 2);
  EXPECT_EQ(Cli({"build", "--kind", "blob", "--kb", Path("x.kb")}).code, 2);
  EXPECT_EQ(Cli({"hotspots", Source("tests/data/hotspot_costs.json"), "--threshold",
                 "2"}).code, 2);
}

TEST_F(CliTest, FormatErrorsExitWithThree) {
  Write("broken.cl", "func main( {\n");
  Outcome syntax = Cli({"dump-dg", Path("broken.cl")});
  EXPECT_EQ(syntax.code, 3);
  EXPECT_NE(syntax.err.find("broken.cl:1:"), std::string::npos);
  Write("junk.kb", "junk\n");
  EXPECT_EQ(Cli({"kb", "inspect", Path("junk.kb")}).code, 3);
  Write("bad.jsonl", "{\"x\": 1}\n[1]\n");
  EXPECT_EQ(Cli({"profile", Source("programs/foo.cl"), Path("bad.jsonl")}).code, 3);
  EXPECT_EQ(Cli({"kb", "inspect", Path("missing.kb")}).code, 3);
}

TEST_F(CliTest, HotspotsFromCostTable) {
  Outcome h = Cli({"hotspots", Source("tests/data/hotspot_costs.json")});
  ASSERT_EQ(h.code, 0) << h.err;
  for (const char* pct : {"32.08%", "25.39%", "14.76%", "5.11%"}) {
    EXPECT_NE(h.out.find(pct), std::string::npos) << pct;
  }
  Outcome j = Cli({"hotspots", Source("tests/data/hotspot_costs.json"), "--json",
                   "--threshold", "0.2"});
  ASSERT_EQ(j.code, 0);
  EXPECT_TRUE(nlohmann::json::accept(j.out));
}

TEST_F(CliTest, HotspotsFromProfileLedger) {
  Write("in.jsonl", Cli({"gen", "foo", "--seed", "3", "--count", "5"}).out);
  ASSERT_EQ(Cli({"profile", Source("programs/foo.cl"), Path("in.jsonl"),
                 "--ledger-out", Path("l.json")}).code, 0);
  Outcome h = Cli({"hotspots", Path("l.json"), "--per-check-cost", "1",
                   "--per-stmt-cost", "0"});
  ASSERT_EQ(h.code, 0) << h.err;
  EXPECT_NE(h.out.find("foo"), std::string::npos);
}

TEST_F(CliTest, DumpDgShowsAffectingSet) {
  Outcome d = Cli({"dump-dg", Source("programs/mainGtU.cl"), "--function", "mainGtU"});
  ASSERT_EQ(d.code, 0);
  EXPECT_NE(d.out.find("(mainGtU,block):(i1:+,i2:+,nblock:-)"), std::string::npos);
  EXPECT_EQ(Cli({"dump-dg", Source("programs/mainGtU.cl"), "--function", "nope"}).code, 2);
}

TEST_F(CliTest, GenIsSeeded) {
  EXPECT_EQ(Cli({"gen", "program", "--seed", "5"}).out,
            Cli({"gen", "program", "--seed", "5"}).out);
  Outcome d = Cli({"gen", "defang", "--seed", "1", "--count", "3"});
  EXPECT_EQ(std::count(d.out.begin(), d.out.end(), '\n'), 3);
}

TEST_F(CliTest, ReadInputsAcceptsObjectArrayAndLines) {
  Write("one.json", R"({"a": 1})");
  Write("many.json", R"([{"a": 1}, {"a": 2}])");
  Write("lines.jsonl", "{\"a\": 1}\n\n{\"a\": 2}\n{\"a\": 3}\n");
  EXPECT_EQ(ReadInputs(Path("one.json")).size(), 1u);
  EXPECT_EQ(ReadInputs(Path("many.json")).size(), 2u);
  EXPECT_EQ(ReadInputs(Path("lines.jsonl")).size(), 3u);
  Write("scalar.json", "7");
  EXPECT_THROW(ReadInputs(Path("scalar.json")), FormatError);
}

}  // namespace
}  // namespace hullcheck::cli
