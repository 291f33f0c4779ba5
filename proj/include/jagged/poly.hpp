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

#ifndef JAGGED_POLY_HPP
#define JAGGED_POLY_HPP

#include <string>
#include <vector>

#include "jagged/rational.hpp"

namespace jag {

// Dense univariate polynomial over Q in the variable t.
class Poly {
 public:
  Poly() = default;
  Poly(const Rational& c);  // NOLINT(google-explicit-constructor)
  static Poly monomial(const Rational& c, int degree);

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  Rational coeff(int i) const;
  const Rational& lead() const { return c_.back(); }
  int low_degree() const;  // smallest degree with nonzero coefficient

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  bool operator==(const Poly& o) const { return c_ == o.c_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  // Drops terms of degree > k.
  Poly truncated(int k) const;
  void divmod(const Poly& d, Poly* q, Poly* r) const;
  Poly monic() const;

  std::string to_string(const std::string& var = "t") const;
  int num_terms() const;

 private:
  void trim();
  std::vector<Rational> c_;
};

Poly gcd(Poly a, Poly b);

// Element of Q(t) in lowest terms with monic denominator.
class RatFunc {
 public:
  RatFunc() : num_(), den_(Rational(1)) {}
  RatFunc(const Poly& n);  // NOLINT(google-explicit-constructor)
  RatFunc(const Poly& n, const Poly& d);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  RatFunc operator+(const RatFunc& o) const;
  RatFunc operator-(const RatFunc& o) const;
  RatFunc operator*(const RatFunc& o) const;
  RatFunc operator/(const RatFunc& o) const;
  bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }

 private:
  Poly num_, den_;
};

}  // namespace jag

#endif  // JAGGED_POLY_HPP
