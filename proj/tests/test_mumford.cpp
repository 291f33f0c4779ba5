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

#include "doctest.h"
#include "jagged/mumford.hpp"
#include "jagged/structure.hpp"
#include "scenario_util.hpp"

using namespace jag;

namespace {

Coords q(long a, long b = 1) { return {make_rational(a, b)}; }

void check_equivalence(const std::string& name, std::int64_t level, std::int64_t k) {
  auto doc = scenario_doc(name);
  MumfordData md = mumford_from_json(doc);
  ChartComplex c = complex_from_json(doc);
  Structure s = structure_from_json(doc, c);
  Cutoffs cut;
  cut.torder = k;
  auto rep = equivalence_check(md, c, s, level, cut, 2, 0);
  std::string failed;
  for (const auto& l : rep.lines)
    if (l.rfind("FAIL", 0) == 0) failed += l + "\n";
  INFO(name << "\n" << failed);
  CHECK(rep.ok());
  CHECK(!rep.lines.empty());
}

}  // namespace

TEST_CASE("phi on R/Z is the quadratic interpolation") {
  MumfordData d = mumford_from_json(scenario_doc("torus1d"));
  for (long n = -4; n <= 5; ++n) CHECK(mumford_phi(d, q(n)) == make_rational(n * (n - 1), 2));
  CHECK(mumford_phi(d, q(5, 2)) == 2);
  CHECK(mumford_reduce(d, q(-7, 3)) == q(2, 3));
}

TEST_CASE("gamma action composes and preserves theta") {
  for (const char* name : {"torus1d_d", "torus2d"}) {
    MumfordData d = mumford_from_json(scenario_doc(name));
    std::vector<std::int64_t> a(d.rank, 1), b(d.rank, -2), ab(d.rank, -1);
    if (d.rank == 2) a[1] = 3, ab[1] = 1;
    Exponent e(d.rank + 2, 0);
    e[0] = 3, e[d.rank] = 5, e[d.rank + 1] = 2;
    CHECK(mumford_psi(d, a, mumford_psi(d, b, e)) == mumford_psi(d, ab, e));
    // psi_g maps each lattice-sum exponent (l y, l phi(y), l) to another one.
    Coords m(d.rank, make_rational(1, 2));
    auto th = mumford_theta(d, m, 2, 0, 10);
    REQUIRE(th.size() > 2);
    for (const auto& [ex, term] : th.terms()) {
      Exponent img = mumford_psi(d, a, ex);
      Coords y;
      for (int i = 0; i < d.rank; ++i) y.push_back(make_rational(img[i], 2));
      CHECK(make_rational(img[d.rank]) == 2 * mumford_phi(d, y));
      CHECK(mumford_reduce(d, y) == mumford_reduce(d, m));
    }
  }
}

TEST_CASE("lattice products on R/Z") {
  MumfordData d = mumford_from_json(scenario_doc("torus1d"));
  auto p = mumford_product(d, q(0), 1, q(0), 1, 9);
  REQUIRE(p.coeffs.size() == 2);
  Poly t = Poly::monomial(1, 1);
  CHECK(p.coeffs.at(q(0)) == Poly(1) + Poly::monomial(2, 1) + Poly::monomial(2, 4) + Poly::monomial(2, 9));
  CHECK(p.coeffs.at(q(1, 2)) == Poly(2) + Poly::monomial(2, 2) + Poly::monomial(2, 6));
}

TEST_CASE("jagged paths agree with lattice sums on R/Z") { check_equivalence("torus1d", 2, 12); }
TEST_CASE("jagged paths agree with lattice sums on R/2Z") { check_equivalence("torus1d_d", 2, 12); }
TEST_CASE("jagged paths agree with lattice sums on R/3Z") { check_equivalence("torus1d_3", 2, 8); }
TEST_CASE("jagged paths agree with lattice sums on R^2/Z^2") { check_equivalence("torus2d", 1, 8); }

TEST_CASE("straight pairs agree with the solved product") {
  for (const char* name : {"torus1d", "torus1d_d", "torus1d_3", "torus2d"}) {
    MumfordData d = mumford_from_json(scenario_doc(name));
    for (std::int64_t l1 = 1; l1 <= 2; ++l1)
      for (const auto& m1 : mumford_basis(d, l1))
        for (const auto& m2 : mumford_basis(d, 1)) {
          auto a = mumford_product(d, m1, l1, m2, 1, 8);
          INFO(name << " " << to_string(m1) << " " << to_string(m2));
          CHECK(a.coeffs == mumford_product_by_solve(d, m1, l1, m2, 1, 8).coeffs);
          CHECK(a.coeffs == mumford_product(d, m2, 1, m1, l1, 8).coeffs);
        }
  }
}
