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

#include <cctype>
#include <string>

#include "jagged/error.hpp"
#include "jagged/rational.hpp"

namespace jag {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::config: return "configuration error";
    case ErrorKind::domain: return "domain error";
    case ErrorKind::non_invertible: return "non-invertible";
    case ErrorKind::validation: return "validation error";
    case ErrorKind::geometry: return "geometry error";
    case ErrorKind::genericity: return "genericity error";
    case ErrorKind::degenerate: return "degenerate moduli";
    case ErrorKind::inconsistent: return "structure inconsistency";
    case ErrorKind::unsupported: return "unsupported";
    case ErrorKind::parse: return "parse error";
    case ErrorKind::check_failed: return "check failed";
    case ErrorKind::render: return "render error";
  }
  return "error";
}

namespace {

bool valid_integer_text(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

Integer parse_integer(std::string_view s) {
  if (!valid_integer_text(s)) fail(ErrorKind::parse, "bad integer '" + std::string(s) + "'");
  std::string text(s);
  if (text[0] == '+') text.erase(0, 1);
  return Integer(text, 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  Integer num = parse_integer(text.substr(0, slash));
  Integer den = parse_integer(text.substr(slash + 1));
  if (den == 0) fail(ErrorKind::parse, "zero denominator in '" + std::string(text) + "'");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::int64_t to_int64(const Rational& q) {
  if (!is_integer(q)) fail(ErrorKind::domain, "expected an integer, got " + to_string(q));
  if (!q.get_num().fits_slong_p()) fail(ErrorKind::domain, "integer out of range");
  return q.get_num().get_si();
}

}  // namespace jag
