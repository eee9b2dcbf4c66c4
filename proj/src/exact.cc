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

#include "hullcheck/exact.h"

#include <utility>

#include "hullcheck/error.h"

namespace hullcheck {

std::string FormatBigInt(const BigInt& value) { return value.str(); }

std::string FormatRational(const Rational& value) {
  return numerator(value).str() + "/" + denominator(value).str();
}

BigInt ParseBigInt(std::string_view text) {
  size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    negative = text[i] == '-';
    ++i;
  }
  if (i == text.size()) {
    throw FormatError("malformed integer '" + std::string(text) + "'");
  }
  BigInt result = 0;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c < '0' || c > '9') {
      throw FormatError("malformed integer '" + std::string(text) + "'");
    }
    result = result * 10 + (c - '0');
  }
  return negative ? BigInt(-result) : result;
}

Rational ParseRational(std::string_view text) {
  size_t slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(ParseBigInt(text));
  BigInt num = ParseBigInt(text.substr(0, slash));
  BigInt den = ParseBigInt(text.substr(slash + 1));
  if (den == 0) {
    throw FormatError("zero denominator in '" + std::string(text) + "'");
  }
  return Rational(num, den);
}

Rational ParseDecimal(std::string_view text) {
  if (text.find('/') != std::string_view::npos) return ParseRational(text);
  size_t dot = text.find('.');
  if (dot == std::string_view::npos) return Rational(ParseBigInt(text));
  std::string_view frac = text.substr(dot + 1);
  if (frac.empty() || frac.find_first_not_of("0123456789") != frac.npos ||
      dot == 0 || text.substr(0, dot) == "-" || text.substr(0, dot) == "+") {
    throw FormatError("malformed decimal '" + std::string(text) + "'");
  }
  BigInt whole = ParseBigInt(text.substr(0, dot));
  BigInt scale = 1;
  for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
  BigInt part = ParseBigInt(frac);
  bool negative = text[0] == '-';
  BigInt num = whole * scale + (negative ? -part : part);
  return Rational(num, scale);
}

std::string FormatDecimal(const Rational& value, int digits) {
  BigInt scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  BigInt num = boost::multiprecision::numerator(value) * scale;
  BigInt den = boost::multiprecision::denominator(value);
  bool negative = num < 0;
  if (negative) num = -num;
  BigInt q = (2 * num + den) / (2 * den);
  std::string text = FormatBigInt(q);
  if (digits > 0) {
    if (text.size() <= static_cast<size_t>(digits)) {
      text.insert(0, static_cast<size_t>(digits) + 1 - text.size(), '0');
    }
    text.insert(text.size() - static_cast<size_t>(digits), ".");
  }
  return (negative && q != 0 ? "-" : "") + text;
}

BigInt Determinant(std::vector<std::vector<BigInt>> m) {
  const size_t n = m.size();
  if (n == 0) return 1;
  BigInt sign = 1;
  BigInt prev = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      size_t swap_row = k + 1;
      while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
      if (swap_row == n) return 0;
      std::swap(m[k], m[swap_row]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

std::vector<BigInt> GeneralizedCross(const std::vector<std::vector<BigInt>>& rows,
                                     size_t n) {
  std::vector<BigInt> normal(n);
  for (size_t skip = 0; skip < n; ++skip) {
    std::vector<std::vector<BigInt>> minor;
    minor.reserve(rows.size());
    for (const auto& row : rows) {
      std::vector<BigInt> r;
      r.reserve(n - 1);
      for (size_t j = 0; j < n; ++j) {
        if (j != skip) r.push_back(row[j]);
      }
      minor.push_back(std::move(r));
    }
    BigInt det = Determinant(std::move(minor));
    normal[skip] = (skip % 2 == 0) ? det : BigInt(-det);
  }
  return normal;
}

BigInt Dot(const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
  BigInt sum = 0;
  for (size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

BigInt MakePrimitive(std::vector<BigInt>* v) {
  BigInt g = 0;
  for (const BigInt& x : *v) g = gcd(g, abs(x));
  if (g <= 1) return 1;
  for (BigInt& x : *v) x /= g;
  return g;
}

}  // namespace hullcheck
