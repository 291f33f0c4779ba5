// Copyright 2026 The jagged Authors
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

#ifndef JAGGED_ERROR_HPP
#define JAGGED_ERROR_HPP

#include <stdexcept>
#include <string>

namespace jag {

enum class ErrorKind {
  config,          // mismatched algebra parameters
  domain,          // argument outside the operation's domain
  non_invertible,  // negative power of a non-unit
  validation,      // scenario failed a structural check
  geometry,        // path meets a singular point, vertex or is off its ray
  genericity,      // endpoint not in general position
  degenerate,      // positive-dimensional solution family
  inconsistent,    // structure inconsistency detected by a solve
  unsupported,     // input outside the implemented range
  parse,           // malformed document
  check_failed,    // an internal cross-check disagreed
  render,          // drawing references a missing entity
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace jag

#endif  // JAGGED_ERROR_HPP
