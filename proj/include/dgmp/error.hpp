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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dgmp {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed text input. `line` is 1-based, 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// An enumeration would exceed its configured bound.
class BudgetError : public Error {
 public:
  BudgetError(const std::string& what, double requested, double bound)
      : Error(what + " (requested " + format(requested) + ", bound " +
              format(bound) + ")"),
        requested_(requested),
        bound_(bound) {}

  double requested() const { return requested_; }
  double bound() const { return bound_; }

 private:
  static std::string format(double x) {
    std::string s = std::to_string(x);
    // Trim the fixed-point tail std::to_string always produces.
    if (auto dot = s.find('.'); dot != std::string::npos) {
      while (!s.empty() && s.back() == '0') s.pop_back();
      if (!s.empty() && s.back() == '.') s.pop_back();
    }
    return s;
  }

  double requested_;
  double bound_;
};

}  // namespace dgmp
