//
// Copyright 2026 The privcut Authors
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
//

#ifndef PRIVCUT_ERROR_H_
#define PRIVCUT_ERROR_H_

#include <stdexcept>
#include <string>

namespace privcut {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad arguments or configuration supplied by the caller.
class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

// The request exceeds what an exhaustive routine is allowed to enumerate.
class CapabilityError : public Error {
 public:
  using Error::Error;
};

// Malformed input file. Carries the 1-based line number when known.
class ParseError : public InvalidArgumentError {
 public:
  ParseError(const std::string& message, int line)
      : InvalidArgumentError(line > 0 ? "line " + std::to_string(line) + ": " +
                                            message
                                      : message),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// A checked mathematical property failed. `report` holds a JSON document
// describing the counterexample.
class PropertyViolation : public Error {
 public:
  PropertyViolation(const std::string& message, std::string report)
      : Error(message), report_(std::move(report)) {}
  const std::string& report() const { return report_; }

 private:
  std::string report_;
};

}  // namespace privcut

#endif  // PRIVCUT_ERROR_H_
