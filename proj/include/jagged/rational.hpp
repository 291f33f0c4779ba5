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

#ifndef JAGGED_RATIONAL_HPP
#define JAGGED_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace jag {

// Arbitrary precision rational, always canonical (lowest terms, den > 0).
using Rational = mpq_class;
using Integer = mpz_class;

// Parses "p/q", "p" or "-p/q". Throws Error(parse) on malformed text or q == 0.
Rational parse_rational(std::string_view text);

// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);

inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

// Requires is_integer(q) and that q fits in 64 bits.
std::int64_t to_int64(const Rational& q);

inline Rational floor_div(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rational(r);
}

inline int sign(const Rational& q) { return sgn(q); }

}  // namespace jag

#endif  // JAGGED_RATIONAL_HPP
