// Copyright 2026 The gct Authors
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

namespace gct {

class GctError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/** Boundary types disagree when plugging two diagrams together. */
class TypeMismatchError : public GctError {
 public:
  TypeMismatchError(const std::string& msg, int index)
      : GctError(msg), index_(index) {}
  int index() const { return index_; }

 private:
  int index_;
};

class UnsupportedDaggerError : public GctError {
 public:
  using GctError::GctError;
};

class MissingDualError : public GctError {
 public:
  using GctError::GctError;
};

class UnassignedGeneratorError : public GctError {
 public:
  using GctError::GctError;
};

class DimensionLimitError : public GctError {
 public:
  using GctError::GctError;
};

class ShapeMismatchError : public GctError {
 public:
  using GctError::GctError;
};

class IndexError : public GctError {
 public:
  using GctError::GctError;
};

class UnsupportedFragmentError : public GctError {
 public:
  using GctError::GctError;
};

class StaleMatchingError : public GctError {
 public:
  using GctError::GctError;
};

class PreconditionError : public GctError {
 public:
  using GctError::GctError;
};

class ParseError : public GctError {
 public:
  ParseError(const std::string& msg, int line, int column)
      : GctError(std::to_string(line) + ":" + std::to_string(column) + ": " +
                 msg),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace gct
