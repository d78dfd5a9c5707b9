// Copyright 2026 The PhantomNet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PHANTOMNET_ERROR_H_
#define PHANTOMNET_ERROR_H_

#include <stdexcept>
#include <string>

namespace phantomnet {

// Bad input from the caller: parameters, configs, command lines. The CLI
// maps these to exit code 1.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidParameter : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ParseError : public ValidationError {
 public:
  ParseError(int line, const std::string& message)
      : ValidationError("line " + std::to_string(line) + ": " + message),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Arguments outside the domain of an analytic formula (e.g. arcsin > 1).
class DomainError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Everything that goes wrong while running. Exit code 2.
class RuntimeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConnectivityError : public RuntimeError {
 public:
  using RuntimeError::RuntimeError;
};

class UnknownNode : public RuntimeError {
 public:
  using RuntimeError::RuntimeError;
};

class SourceIsSink : public RuntimeError {
 public:
  using RuntimeError::RuntimeError;
};

class EmptyDomain : public RuntimeError {
 public:
  using RuntimeError::RuntimeError;
};

class EmptyRing : public RuntimeError {
 public:
  using RuntimeError::RuntimeError;
};

class QuadratureFailure : public RuntimeError {
 public:
  using RuntimeError::RuntimeError;
};

class IoError : public RuntimeError {
 public:
  using RuntimeError::RuntimeError;
};

}  // namespace phantomnet

#endif  // PHANTOMNET_ERROR_H_
