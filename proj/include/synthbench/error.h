// Copyright 2026 The synthbench Authors.
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

#ifndef SYNTHBENCH_ERROR_H_
#define SYNTHBENCH_ERROR_H_

#include <stdexcept>
#include <string>

namespace synthbench {

// Base for every error the library raises. The subclasses map onto the
// command-line exit codes: IoError -> 1, ValidationError -> 2,
// GeneratorError -> 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Bad input data or arguments: schema mismatch, empty tables, malformed
// configuration.
class ValidationError : public Error {
 public:
  using Error::Error;
};

enum class GeneratorErrorKind {
  kPluginFailed,
  kPluginTimeout,
  kMalformedOutput,
  kBuiltinFailed,
};

const char* ToString(GeneratorErrorKind kind);

class GeneratorError : public Error {
 public:
  GeneratorError(GeneratorErrorKind kind, const std::string& message,
                 std::string captured_stderr = {})
      : Error(message), kind_(kind), stderr_(std::move(captured_stderr)) {}

  GeneratorErrorKind kind() const { return kind_; }
  const std::string& captured_stderr() const { return stderr_; }

 private:
  GeneratorErrorKind kind_;
  std::string stderr_;
};

}  // namespace synthbench

#endif  // SYNTHBENCH_ERROR_H_
