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

#ifndef HULLCHECK_CHECKLANG_PARSER_H_
#define HULLCHECK_CHECKLANG_PARSER_H_

#include <string_view>

#include "hullcheck/checklang/ast.h"

namespace hullcheck::checklang {

// Builds the AST and numbers access sites, loops and arms in source order.
// Throws SyntaxError.
Program ParseSyntax(std::string_view source);

// Resolves names to frame slots, checks types, arity, duplicate functions
// and use-before-declare, and fills Program::sites / Program::loops.
// Throws SyntaxError.
void Resolve(Program* program);

// ParseSyntax followed by Resolve.
Program Parse(std::string_view source);

}  // namespace hullcheck::checklang

#endif  // HULLCHECK_CHECKLANG_PARSER_H_
