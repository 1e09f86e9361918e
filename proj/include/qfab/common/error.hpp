// Copyright 2026 The qfab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace qfab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input text or file could not be parsed. Carries a 1-based position.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error("line " + std::to_string(line) + ":" + std::to_string(column) +
              ": " + what),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

/// A value violates a documented precondition or invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A numerical routine could not produce a trustworthy answer.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// A routed circuit failed an equivalence check.
class VerificationError : public Error {
 public:
  using Error::Error;
};

}  // namespace qfab
