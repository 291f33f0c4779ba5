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

#ifndef JAGGED_SERIES_HPP
#define JAGGED_SERIES_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "jagged/rational.hpp"

namespace jag {

// A point of the exponent lattice. The rank is fixed by the owning algebra.
using Exponent = std::vector<std::int64_t>;

Exponent operator+(const Exponent& a, const Exponent& b);
Exponent operator-(const Exponent& a, const Exponent& b);
Exponent scaled(const Exponent& a, std::int64_t n);
std::string to_string(const Exponent& e);

// Parameters shared by every element of one truncated monoid algebra.
//
// Terms are dropped when their t-order (a linear functional of the exponent)
// exceeds `torder_cutoff`, when their wall-monomial length exceeds
// `length_cutoff`, or when a component exceeds the optional `box` bound.
struct AlgebraSpec {
  int rank = 0;
  std::int64_t torder_cutoff = 0;
  int length_cutoff = 0;
  std::vector<Rational> torder_weights;
  std::optional<std::vector<std::int64_t>> box;

  Rational torder(const Exponent& e) const;
  bool admits(const Exponent& e, int length) const;
  bool operator==(const AlgebraSpec& other) const;
};

using AlgebraPtr = std::shared_ptr<const AlgebraSpec>;

AlgebraPtr make_algebra(int rank, std::int64_t torder_cutoff, int length_cutoff,
                        std::vector<Rational> torder_weights,
                        std::optional<std::vector<std::int64_t>> box = {});

struct Term {
  Rational coeff;
  // Number of wall-monomial factors. Merged terms keep the smaller length.
  int length = 0;
};

// Finite sum of lattice monomials with rational coefficients, truncated
// according to its algebra. Values are immutable in practice; every
// operation returns a new series.
class TruncatedSeries {
 public:
  explicit TruncatedSeries(AlgebraPtr algebra);

  static TruncatedSeries zero(AlgebraPtr algebra);
  static TruncatedSeries one(AlgebraPtr algebra);
  static TruncatedSeries monomial(AlgebraPtr algebra, const Exponent& e,
                                  const Rational& coeff = 1, int length = 0);

  const AlgebraSpec& algebra() const { return *algebra_; }
  const AlgebraPtr& algebra_ptr() const { return algebra_; }
  const std::map<Exponent, Term>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Rational coeff(const Exponent& e) const;
  Rational constant_term() const;

  // Adds c*z^e (respecting truncation).
  void add_term(const Exponent& e, const Rational& c, int length = 0);

  TruncatedSeries operator+(const TruncatedSeries& other) const;
  TruncatedSeries operator-(const TruncatedSeries& other) const;
  TruncatedSeries operator*(const TruncatedSeries& other) const;
  TruncatedSeries scaled(const Rational& c) const;

  // Exact equality of the coefficient maps (lengths are bookkeeping only).
  bool operator==(const TruncatedSeries& other) const;

  std::string to_string() const;

 private:
  void check_compatible(const TruncatedSeries& other) const;

  AlgebraPtr algebra_;
  std::map<Exponent, Term> terms_;
};

// a^n. For n < 0 the constant term must be a nonzero rational and a - c0
// must be nilpotent under the truncation.
TruncatedSeries series_pow(const TruncatedSeries& a, std::int64_t n);

// log(a) = sum_j (-1)^(j+1) (a-1)^j / j. Requires constant term 1.
TruncatedSeries series_log(const TruncatedSeries& a);

// Coefficients g_1..g_k of g(t) such that log(1 + x + y + z + g(xyz)) has
// no pure power (xyz)^l, l = 1..k.
std::vector<Rational> normalize_central_function(int k);

}  // namespace jag

#endif  // JAGGED_SERIES_HPP
