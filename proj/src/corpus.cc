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


#include "hullcheck/corpus.h"

#include <sstream>

#include "hullcheck/error.h"

namespace hullcheck::corpus {

using nlohmann::json;

int64_t Rng::Uniform(int64_t lo, int64_t hi) {
  uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
  return lo + static_cast<int64_t>(engine_() % span);
}

namespace {

class ProgramWriter {
 public:
  explicit ProgramWriter(uint64_t seed) : rng_(seed) {}

  std::string Write() {
    bool helper = rng_.Chance(40);
    if (helper) {
      out_ << "func helper(array<int> x, int t) {\n"
              "  int r = 0;\n"
              "  for (int h = 0; h < t; h = h + 1) {\n"
              "    r = r + x[h];\n"
              "  }\n"
              "  return r;\n"
              "}\n\n";
    }
    out_ << "func kernel(array<int>[n] a, array<int> b, int n, int p, int q, int s) {\n";
    out_ << "  int acc = 0;\n  int j = 0;\n";
    int statements = static_cast<int>(rng_.Uniform(2, 5));
    for (int i = 0; i < statements; ++i) TopStatement(helper);
    if (rng_.Chance(60)) {
      out_ << "  b[j + " << rng_.Uniform(0, 2) << "] = acc;\n";
    }
    out_ << "  return acc + j;\n}\n\n";
    out_ << "func main() {\n"
            "  input array<int> a;\n"
            "  input array<int> b;\n"
            "  input int p;\n"
            "  input int q;\n"
            "  int s = 0;\n"
            "  for (int k = 0; k < len(a); k = k + 1) {\n"
            "    if (a[k] < 10) {\n"
            "      s = s + 1;\n"
            "    }\n"
            "  }\n"
            "  print kernel(a, b, len(a), p, q, s);\n"
            "  print b;\n"
            "}\n";
    return out_.str();
  }

 private:
  // c_1*p + c_2*q + c_3*s + c with small nonnegative coefficients.
  std::string Affine(bool allow_empty) {
    std::string text;
    for (const char* v : {"p", "q", "s"}) {
      if (!rng_.Chance(30)) continue;
      int64_t c = rng_.Uniform(1, 2);
      if (!text.empty()) text += " + ";
      text += (c == 1 ? "" : std::to_string(c) + " * ") + v;
    }
    int64_t k = rng_.Uniform(0, 3);
    if (text.empty()) {
      if (allow_empty) return std::to_string(k);
      return "p + " + std::to_string(k);
    }
    return k == 0 ? text : text + " + " + std::to_string(k);
  }

  std::string Indent(int depth) { return std::string(2 * (depth + 1), ' '); }

  void TopStatement(bool helper) {
    switch (rng_.Uniform(0, 6)) {
      case 0:
        out_ << "  acc = acc + a[" << Affine(true) << "];\n";
        break;
      case 1:
        out_ << "  b[" << Affine(true) << "] = acc;\n";
        break;
      case 2:
        if (helper) {
          out_ << "  acc = acc + helper(a, " << Affine(false) << ");\n";
          break;
        }
        [[fallthrough]];
      case 3: {
        std::string t = "t" + std::to_string(next_id_++);
        out_ << "  array<int> " << t << " = alloc(" << Affine(false) << ");\n";
        out_ << "  " << t << "[" << Affine(true) << "] = acc;\n";
        out_ << "  acc = acc + " << t << "[" << rng_.Uniform(0, 2) << "];\n";
        break;
      }
      default:
        Loop(0);
        break;
    }
  }

  void Loop(int depth) {
    std::string i = "i" + std::to_string(next_id_++);
    std::string ind = Indent(depth);
    std::string bound;
    switch (rng_.Uniform(0, 4)) {
      case 0: bound = i + " < p"; break;
      case 1: bound = i + " < q + " + std::to_string(rng_.Uniform(0, 3)); break;
      case 2: bound = i + " < n"; break;
      case 3: bound = i + " <= s"; break;
      default: bound = i + " < n - " + std::to_string(rng_.Uniform(1, 3)); break;
    }
    bool content_exit = rng_.Chance(15);
    if (content_exit) {
      out_ << ind << "int " << i << " = 0;\n";
      out_ << ind << "while (" << bound << " && a[" << i << "] != 5) {\n";
    } else {
      out_ << ind << "for (int " << i << " = 0; " << bound << "; " << i << " = " << i
           << " + 1) {\n";
    }
    int body = static_cast<int>(rng_.Uniform(1, 3));
    for (int k = 0; k < body; ++k) LoopStatement(depth + 1, i);
    if (content_exit) out_ << Indent(depth + 1) << i << " = " << i << " + 1;\n";
    out_ << ind << "}\n";
  }

  void LoopStatement(int depth, const std::string& i) {
    std::string ind = Indent(depth);
    switch (rng_.Uniform(0, 7)) {
      case 0:
      case 1:
        out_ << ind << "acc = acc + a[" << i << " + " << Affine(true) << "];\n";
        break;
      case 2:
        out_ << ind << "b[" << i << " + " << Affine(true) << "] = acc;\n";
        break;
      case 3:
        out_ << ind << "j = j + " << rng_.Uniform(1, 3) << ";\n";
        break;
      case 4:
        out_ << ind << "if (a[" << i << "] < 10) {\n"
             << ind << "  j = j + " << rng_.Uniform(1, 4) << ";\n"
             << ind << "} else {\n"
             << ind << "  j = j + " << rng_.Uniform(1, 2) << ";\n"
             << ind << "}\n";
        break;
      case 5:
        out_ << ind << "if (acc > " << rng_.Uniform(50, 400) << ") {\n"
             << ind << "  " << (rng_.Chance(50) ? "break" : "return acc") << ";\n"
             << ind << "}\n";
        break;
      default:
        if (depth < 2) {
          Loop(depth);
        } else {
          out_ << ind << "acc = acc + a[" << i << "];\n";
        }
        break;
    }
  }

  Rng rng_;
  std::ostringstream out_;
  int next_id_ = 0;
};

std::vector<int64_t> RandomArray(Rng& rng, int64_t length, int64_t lo, int64_t hi) {
  std::vector<int64_t> v;
  for (int64_t i = 0; i < length; ++i) v.push_back(rng.Uniform(lo, hi));
  return v;
}

}  // namespace

std::string RandomProgram(uint64_t seed) { return ProgramWriter(seed).Write(); }

std::vector<json> RandomInputs(uint64_t seed, size_t count) {
  Rng rng(seed);
  std::vector<json> out;
  for (size_t i = 0; i < count; ++i) {
    json in;
    in["a"] = RandomArray(rng, rng.Uniform(0, 40), 0, 19);
    in["b"] = RandomArray(rng, rng.Uniform(0, 90), 0, 9);
    in["p"] = rng.Uniform(0, 30);
    in["q"] = rng.Uniform(0, 20);
    out.push_back(std::move(in));
  }
  return out;
}

std::vector<json> FooInputs(uint64_t seed, size_t count) {
  Rng rng(seed);
  const std::string alphabet = "abcdefgh<>";
  std::vector<json> out;
  for (size_t i = 0; i < count; ++i) {
    int64_t length = rng.Uniform(1, 60);
    std::string src;
    int64_t need = 1;
    for (int64_t k = 0; k < length; ++k) {
      char c = alphabet[static_cast<size_t>(rng.Uniform(0, 9))];
      src.push_back(c);
      need += (c == '<' || c == '>') ? 4 : 1;
    }
    out.push_back({{"src", src}, {"dsize", need + rng.Uniform(0, 20)}});
  }
  return out;
}

std::vector<json> DefangRequests(uint64_t seed, size_t count, int64_t max_length) {
  Rng rng(seed);
  const std::string plain = "abcdefghijklmnopqrstuvwxyz0123456789/.?=&%";
  std::vector<json> out;
  for (size_t i = 0; i < count; ++i) {
    int64_t length = rng.Uniform(1, max_length);
    int64_t share = rng.Uniform(0, 20);  // percent of special characters
    std::string url;
    for (int64_t k = 0; k < length; ++k) {
      if (rng.Uniform(0, 99) < share) {
        url.push_back(rng.Chance(50) ? '<' : '>');
      } else {
        url.push_back(plain[static_cast<size_t>(rng.Uniform(0, plain.size() - 1))]);
      }
    }
    out.push_back({{"url", url}});
  }
  return out;
}

std::vector<json> MainGtUInputs(uint64_t seed, size_t count, int64_t min_block,
                                int64_t max_block) {
  if (min_block < 21 || max_block < min_block) {
    throw UsageError("mainGtU blocks need 21 <= min_block <= max_block");
  }
  Rng rng(seed);
  std::vector<json> out;
  for (size_t i = 0; i < count; ++i) {
    int64_t nblock = rng.Uniform(min_block, max_block);
    out.push_back({{"block", RandomArray(rng, nblock, 0, 3)},
                   {"stride", rng.Uniform(8, 40)}});
  }
  return out;
}

std::vector<json> LbmInputs(uint64_t seed, size_t count, int64_t grid_size) {
  if (grid_size < 3) throw UsageError("lbm grids need at least 3 cells");
  Rng rng(seed);
  std::vector<json> out;
  for (size_t i = 0; i < count; ++i) {
    out.push_back({{"grid", RandomArray(rng, grid_size, 0, 100)},
                   {"steps", rng.Uniform(1, 200)}});
  }
  return out;
}

}  // namespace hullcheck::corpus
