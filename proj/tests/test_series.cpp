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

#include <random>

#include "doctest.h"
#include "jagged/error.hpp"
#include "jagged/series.hpp"

using namespace jag;

namespace {

AlgebraPtr plain2(int length_cutoff = 6) {
  return make_algebra(2, 100, length_cutoff, {0, 0});
}

TruncatedSeries mono(const AlgebraPtr& a, Exponent e, Rational c = 1, int len = 1) {
  return TruncatedSeries::monomial(a, e, c, len);
}

// Coefficient of x^a y^b z^c in log(1+x+y+z), by expanding each
// (x+y+z)^j with the multinomial formula. Independent of series_log.
Rational brute_log_coeff(int a, int b, int c) {
  int j = a + b + c;
  if (j == 0) return 0;
  Integer fact[16];
  fact[0] = 1;
  for (int i = 1; i < 16; ++i) fact[i] = fact[i - 1] * i;
  Rational multinomial(fact[j], fact[a] * fact[b] * fact[c]);
  multinomial.canonicalize();
  Rational sgn = (j % 2) ? 1 : -1;
  Rational r = sgn * multinomial / j;
  r.canonicalize();
  return r;
}

// Exponents stay in the positive quadrant and length equals total degree,
// so truncation is a genuine grading and the identities hold exactly.
TruncatedSeries random_series(const AlgebraPtr& a, std::mt19937& rng, bool unit) {
  std::uniform_int_distribution<int> ex(0, 2), co(-3, 3);
  TruncatedSeries s = unit ? TruncatedSeries::one(a) : TruncatedSeries::zero(a);
  for (int i = 0; i < 4; ++i) {
    Exponent e{ex(rng), ex(rng)};
    if (e == Exponent{0, 0}) continue;
    s.add_term(e, co(rng), static_cast<int>(e[0] + e[1]));
  }
  return s;
}

}  // namespace

TEST_CASE("series_mul examples") {
  auto a = plain2();
  auto one = TruncatedSeries::one(a);
  auto z = mono(a, {1, 0});
  auto w = mono(a, {0, 1});
  auto prod = (one + z) * (one + w);
  CHECK(prod.size() == 4);
  CHECK(prod.coeff({1, 1}) == 1);
  CHECK(prod == one + z + w + z * w);
  CHECK(z * one == z);
}

TEST_CASE("series_mul in the algebra where x*yz = t") {
  // Exponents (u1, u2, torder): x = (1,0,0), yz = (-1,0,1).
  auto a = make_algebra(3, 6, 12, {0, 0, 1});
  auto one = TruncatedSeries::one(a);
  auto x = mono(a, {1, 0, 0});
  auto yz = mono(a, {-1, 0, 1});
  auto prod = (one + x) * (one + yz);
  CHECK(prod.size() == 4);
  CHECK(prod.coeff({0, 0, 1}) == 1);
}

TEST_CASE("series_mul rejects mismatched algebras") {
  auto a = plain2(3);
  auto b = plain2(4);
  CHECK_THROWS_AS(TruncatedSeries::one(a) * TruncatedSeries::one(b), Error);
}

TEST_CASE("series_pow") {
  auto a = plain2(3);
  auto one = TruncatedSeries::one(a);
  auto z = mono(a, {1, 0});
  auto sq = series_pow(one + z, 2);
  CHECK(sq.coeff({1, 0}) == 2);
  CHECK(sq.coeff({2, 0}) == 1);
  auto inv = series_pow(one + z, -1);
  CHECK(inv.size() == 4);
  CHECK(inv.coeff({1, 0}) == -1);
  CHECK(inv.coeff({2, 0}) == 1);
  CHECK(inv.coeff({3, 0}) == -1);
  CHECK(series_pow(one + mono(a, {0, 1}), 0) == one);
  CHECK_THROWS_AS(series_pow(z, -1), Error);
}

TEST_CASE("series_pow refuses a non-nilpotent perturbation") {
  auto a = make_algebra(1, 5, 5, {0});
  auto s = TruncatedSeries::one(a) + TruncatedSeries::monomial(a, {1}, 1, 0);
  CHECK_THROWS_AS(series_pow(s, -1), Error);
}

TEST_CASE("series_log") {
  auto a = plain2(3);
  auto one = TruncatedSeries::one(a);
  CHECK(series_log(one).is_zero());
  auto u = mono(a, {1, 0});
  auto l = series_log(one + u);
  CHECK(l.coeff({1, 0}) == 1);
  CHECK(l.coeff({2, 0}) == Rational(-1, 2));
  CHECK(l.coeff({3, 0}) == Rational(1, 3));
  CHECK(l.size() == 3);
  CHECK_THROWS_AS(series_log(u), Error);
}

TEST_CASE("log(1+x+y+z) matches the multinomial oracle") {
  auto a = make_algebra(3, 4, 4, {1, 1, 1});
  auto f = TruncatedSeries::one(a);
  for (int i = 0; i < 3; ++i) {
    Exponent e(3, 0);
    e[i] = 1;
    f.add_term(e, 1, 1);
  }
  auto l = series_log(f);
  CHECK(brute_log_coeff(1, 1, 1) == 2);
  CHECK(l.coeff({1, 1, 1}) == 2);
  for (int x = 0; x <= 4; ++x)
    for (int y = 0; x + y <= 4; ++y)
      for (int z = 0; x + y + z <= 4; ++z)
        CHECK(l.coeff({x, y, z}) == brute_log_coeff(x, y, z));
}

TEST_CASE("normalize_central_function") {
  CHECK(normalize_central_function(0).empty());
  auto g1 = normalize_central_function(1);
  REQUIRE(g1.size() == 1);
  CHECK(g1[0] == -2);
  auto g5 = normalize_central_function(5);
  std::vector<Rational> expected{-2, 5, -32, 286, -3038};
  CHECK(g5 == expected);
  auto g6 = normalize_central_function(6);
  CHECK(std::equal(g5.begin(), g5.end(), g6.begin()));
}

TEST_CASE("algebra laws on random series") {
  std::mt19937 rng(7);
  auto a = plain2(5);
  for (int trial = 0; trial < 30; ++trial) {
    auto p = random_series(a, rng, false);
    auto q = random_series(a, rng, false);
    auto r = random_series(a, rng, false);
    CHECK(p * q == q * p);
    CHECK((p * q) * r == p * (q * r));

    auto u = random_series(a, rng, true);
    auto v = random_series(a, rng, true);
    CHECK(series_pow(u, 2) * series_pow(u, 3) == series_pow(u, 5));
    CHECK(series_pow(u, -1) * series_pow(u, 3) == series_pow(u, 2));
    CHECK(series_pow(series_pow(u, -1), -1) == u);
    CHECK(series_log(u * v) == series_log(u) + series_log(v));
  }
}
