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

#ifndef HULLCHECK_TOOLS_CLI_H_
#define HULLCHECK_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

namespace hullcheck::cli {

// Runs one hullcheck command line and returns the process exit code.
int Main(const std::vector<std::string>& args, std::ostream& out,
         std::ostream& err);

// Inputs from a .json file (one object or an array of objects) or a .jsonl
// file (one object per line). Throws FormatError.
std::vector<nlohmann::json> ReadInputs(const std::string& path);

}  // namespace hullcheck::cli

#endif  // HULLCHECK_TOOLS_CLI_H_
