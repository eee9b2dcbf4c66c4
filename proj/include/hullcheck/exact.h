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

#ifndef HULLCHECK_EXACT_H_
#define HULLCHECK_EXACT_H_

#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace hullcheck {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Decimal text of an integer.
std::string FormatBigInt(const BigInt& value);

// "num/den" in lowest terms; integers are written as "num/1".
std::string FormatRational(const Rational& value);

// Parses an optionally signed decimal integer. Throws FormatError.
BigInt ParseBigInt(std::string_view text);

// Parses "num/den" or a bare integer. Throws FormatError on a zero
// denominator or malformed text.
Rational ParseRational(std::string_view text);

// Parses a decimal such as "814.87", an integer, or "num/den" exactly.
// Throws FormatError.
Rational ParseDecimal(std::string_view text);

// Decimal text rounded half away from zero to `digits` fractional digits.
std::string FormatDecimal(const Rational& value, int digits);

// Determinant of a square integer matrix (fraction-free elimination).
BigInt Determinant(std::vector<std::vector<BigInt>> m);

// Vector orthogonal to the rows of an (n-1) x n integer matrix, built from
// signed maximal minors. Zero iff the rows are linearly dependent.
std::vector<BigInt> GeneralizedCross(const std::vector<std::vector<BigInt>>& rows,
                                     size_t n);

BigInt Dot(const std::vector<BigInt>& a, const std::vector<BigInt>& b);

// Divides the vector by the gcd of its entries. Returns the divisor (1 for
// the zero vector).
BigInt MakePrimitive(std::vector<BigInt>* v);

}  // namespace hullcheck

#endif  // HULLCHECK_EXACT_H_
