// Copyright 2026 The DGMP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Exact rational numbers backed by GMP.

#include <gmpxx.h>

#include <cctype>
#include <iomanip>
#include <sstream>
#include <string>
#include <string_view>

#include "dgmp/error.hpp"

namespace dgmp {

using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw Error("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// Accepts "p", "-p", "p/q" and "-p/q" with decimal digits only.
inline Rational parse_rational(std::string_view text) {
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
  const std::size_t num_begin = i;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
  if (i == num_begin) throw Error("malformed rational '" + std::string(text) + "'");
  if (i < text.size()) {
    if (text[i] != '/') throw Error("malformed rational '" + std::string(text) + "'");
    ++i;
    const std::size_t den_begin = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == den_begin || i != text.size()) {
      throw Error("malformed rational '" + std::string(text) + "'");
    }
    if (text.substr(den_begin).find_first_not_of('0') == std::string_view::npos) {
      throw Error("rational with zero denominator '" + std::string(text) + "'");
    }
  }
  std::string body(text[0] == '+' ? text.substr(1) : text);
  Rational r;
  if (r.set_str(body, 10) != 0) {
    throw Error("malformed rational '" + std::string(text) + "'");
  }
  r.canonicalize();
  return r;
}

// "p/q", or "p" for integers.
inline std::string to_string(const Rational& r) { return r.get_str(); }

inline double to_double(const Rational& r) { return r.get_d(); }

inline std::string format_decimal(double x, int precision = 6) {
  std::ostringstream out;
  out << std::setprecision(precision) << x;
  return out.str();
}

// "p/q (≈ decimal)" for non-integers, plain "p" otherwise.
inline std::string format_exact(const Rational& r) {
  if (r.get_den() == 1) return r.get_str();
  return r.get_str() + " (≈ " + format_decimal(r.get_d()) + ")";
}

inline bool is_integer_reciprocal(const Rational& step) {
  return sgn(step) > 0 && step <= 1 && step.get_num() == 1;
}

// Number of subdivisions of [0,1] for a step 1/N.
inline unsigned long reciprocal_steps(const Rational& step) {
  if (!is_integer_reciprocal(step)) {
    throw Error("grid step must be 1/N with N a positive integer, got " + to_string(step));
  }
  return step.get_den().get_ui();
}

}  // namespace dgmp
