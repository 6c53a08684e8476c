// Copyright 2026 The tagkit authors
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

#ifndef TAGKIT_ERROR_HPP_
#define TAGKIT_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace tagkit {

// Base class of all toolkit errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Command line / configuration misuse. CLI exit code 1.
class UsageError : public Error {
 public:
  using Error::Error;
};

// Malformed or inconsistent input data. CLI exit code 2.
class DataError : public Error {
 public:
  using Error::Error;
};

// Syntactically broken input; carries the 1-based line number.
class ParseError : public DataError {
 public:
  ParseError(const std::string& what, long line)
      : DataError("line " + std::to_string(line) + ": " + what), line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

// Well-formed input that violates a semantic constraint (e.g. unknown tag).
class ValidationError : public DataError {
 public:
  using DataError::DataError;
};

// File system / adapter failures.
class IoError : public DataError {
 public:
  using DataError::DataError;
};

// Token-aligned corpora that are not actually aligned.
class AlignmentError : public DataError {
 public:
  using DataError::DataError;
};

}  // namespace tagkit

#endif  // TAGKIT_ERROR_HPP_
