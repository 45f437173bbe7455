// Copyright 2026 The EcoDiag Authors
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

#include <stdexcept>
#include <string>

namespace ecodiag {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input text. line and column are 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column = 0)
      : Error(format(message, line, column)), message_(message), line_(line), column_(column) {}

  const std::string& message() const { return message_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  static std::string format(const std::string& message, std::size_t line, std::size_t column) {
    if (line == 0) return message;
    std::string out = "line " + std::to_string(line);
    if (column != 0) out += ", column " + std::to_string(column);
    return out + ": " + message;
  }

  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

// A value violates a domain invariant (negative quantity, bad year order...).
class InvariantError : public Error {
 public:
  using Error::Error;
};

class MissingFactorError : public Error {
 public:
  explicit MissingFactorError(const std::string& category)
      : Error("missing factor: " + category), category_(category) {}
  const std::string& category() const { return category_; }

 private:
  std::string category_;
};

class UnknownFluidError : public Error {
 public:
  explicit UnknownFluidError(const std::string& fluid)
      : Error("unknown refrigerant fluid: " + fluid), fluid_(fluid) {}
  const std::string& fluid() const { return fluid_; }

 private:
  std::string fluid_;
};

// Scenario action refers to an unknown asset or reuses an existing id.
class ScenarioError : public Error {
 public:
  using Error::Error;
};

}  // namespace ecodiag
