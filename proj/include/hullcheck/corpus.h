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


#ifndef HULLCHECK_CORPUS_H_
#define HULLCHECK_CORPUS_H_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"

namespace hullcheck::corpus {

// Deterministic across platforms for a given seed.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}
  // Uniform in [lo, hi].
  int64_t Uniform(int64_t lo, int64_t hi);
  bool Chance(int percent) { return Uniform(0, 99) < percent; }

 private:
  std::mt19937_64 engine_;
};

// A random program from the linear class: loops with affine bounds, affine
// indices, constant accumulations, content-dependent branches, early exits,
// helper calls and local buffers. main() reads the inputs produced by
// RandomInputs.
std::string RandomProgram(uint64_t seed);
std::vector<nlohmann::json> RandomInputs(uint64_t seed, size_t count);

// Inputs for programs/foo.cl; dsize always fits the escaped string.
std::vector<nlohmann::json> FooInputs(uint64_t seed, size_t count);

// URLs for programs/defang.cl with lengths in [1, max_length] and a
// per-request share of '<' and '>' characters.
std::vector<nlohmann::json> DefangRequests(uint64_t seed, size_t count,
                                           int64_t max_length = 1000);

// Blocks for programs/mainGtU.cl with nblock in [min_block, max_block] and a
// pair stride. min_block must be at least 21 so every offset satisfies
// nblock > i + 20.
std::vector<nlohmann::json> MainGtUInputs(uint64_t seed, size_t count,
                                          int64_t min_block = 30,
                                          int64_t max_block = 400);

// Lattices for programs/lbm.cl: a fixed number of cells with random contents
// and step counts.
std::vector<nlohmann::json> LbmInputs(uint64_t seed, size_t count,
                                      int64_t grid_size = 64);

}  // namespace hullcheck::corpus

#endif  // HULLCHECK_CORPUS_H_
