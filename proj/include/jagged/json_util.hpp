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

#ifndef JAGGED_JSON_UTIL_HPP
#define JAGGED_JSON_UTIL_HPP

#include <string>

#include "json.hpp"
#include "jagged/complex.hpp"
#include "jagged/error.hpp"
#include "jagged/rational.hpp"

namespace jag {

inline nlohmann::json parse_json(const std::string& text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::parse, std::string("invalid JSON: ") + e.what());
  }
}

// Rationals are "p/q" strings; plain JSON integers are accepted too.
inline Rational json_rational(const nlohmann::json& j) {
  if (j.is_number_integer()) return Rational(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  fail(ErrorKind::parse, "expected a rational, got " + j.dump());
}

inline std::int64_t json_int(const nlohmann::json& j) {
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_string()) return to_int64(parse_rational(j.get<std::string>()));
  fail(ErrorKind::parse, "expected an integer, got " + j.dump());
}

inline nlohmann::json rational_json(const Rational& q) { return to_string(q); }

Point json_point(const nlohmann::json& j, int dim);
ChartComplex complex_from_json(const nlohmann::json& doc, ValidationReport* report = nullptr);

}  // namespace jag

#endif  // JAGGED_JSON_UTIL_HPP
