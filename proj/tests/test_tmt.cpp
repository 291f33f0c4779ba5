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

#include <algorithm>
#include <set>

#include "doctest.h"
#include "jagged/error.hpp"
#include "jagged/structure.hpp"
#include "jagged/tmt.hpp"
#include "scenario_util.hpp"

using namespace jag;

namespace {

// Plane trees with n ordered leaves and at least two children per node.
std::int64_t plane_trees(int n) {
  std::vector<std::int64_t> s(n + 1, 0), f(n + 1, 0);
  f[0] = 1;
  s[1] = 1;
  f[1] = 1;
  for (int m = 2; m <= n; ++m) {
    for (int j = 1; j < m; ++j) s[m] += s[j] * f[m - j];
    for (int j = 1; j <= m; ++j) f[m] += s[j] * f[m - j];
  }
  return s[n];
}

Coords q(long a, long b = 1) { return {make_rational(a, b)}; }

}  // namespace

TEST_CASE("ribbon tree counts") {
  CHECK(enumerate_ribbon_trees(2).size() == 1);
  CHECK(enumerate_ribbon_trees(3).size() == 3);
  for (int d = 2; d <= 6; ++d) {
    auto trees = enumerate_ribbon_trees(d);
    CHECK(static_cast<std::int64_t>(trees.size()) == plane_trees(d));
    std::set<std::string> names;
    for (const auto& t : trees) names.insert(t.to_string());
    CHECK(names.size() == trees.size());
  }
  std::set<std::string> three;
  for (const auto& t : enumerate_ribbon_trees(3)) three.insert(t.to_string());
  CHECK(three == std::set<std::string>{"((01,12),23)", "(01,(12,23))", "(01,12,23)"});
  CHECK_THROWS_AS(enumerate_ribbon_trees(7), Error);
}

TEST_CASE("mu_2 on tori is the lattice product") {
  for (const char* name : {"torus1d", "torus1d_d", "torus1d_3"}) {
    MumfordData d = mumford_from_json(scenario_doc(name));
    for (std::int64_t l2 = 1; l2 <= 2; ++l2)
      for (const auto& m1 : mumford_basis(d, 1))
        for (const auto& m2 : mumford_basis(d, l2)) {
          MuResult r = mu_torus(d, {0, 1, 1 + l2}, {m1, m2}, 8);
          INFO(name << " " << to_string(m1) << " " << to_string(m2));
          CHECK(r.coeffs == mumford_product(d, m1, 1, m2, l2, 8).coeffs);
          for (const auto& t : r.trees) {
            auto c = t.contracted_edges();
            CHECK(std::find(c.begin(), c.end(), "e_{0,2}") != c.end());
            CHECK(t.ord >= 0);
          }
        }
  }
}

TEST_CASE("levels 0,1,3,2 on R/3Z contract e_{2,3} and e_{0,3}") {
  MumfordData d = mumford_from_json(scenario_doc("torus1d_3"));
  MuResult r = mu_torus(d, {0, 1, 3, 2}, {q(0), q(1, 2), q(1)}, 8);
  REQUIRE(!r.trees.empty());
  for (const auto& t : r.trees) {
    CHECK(t.tree.to_string() == "(01,(12,23))");
    CHECK(t.contracted_edges() == std::vector<std::string>{"e_{0,3}", "e_{2,3}"});
    CHECK(t.ord >= 0);
    CHECK(t.output[0] * 2 == floor_div(t.output[0] * 2));
  }
  for (const auto& [p, c] : r.coeffs) MESSAGE(to_string(p) << ": " << c.to_string());
}

TEST_CASE("all inputs at one point give degenerate moduli") {
  MumfordData d = mumford_from_json(scenario_doc("torus1d"));
  try {
    mu_torus(d, {0, 1, 3, 2}, {q(0), q(0), q(0)}, 6);
    FAIL("expected a degenerate-moduli error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::degenerate);
  }
}

TEST_CASE("mu_2 from balanced pairs equals theta multiplication") {
  for (const char* name : {"b1", "b2", "square2sing", "b3", "cubic", "toric_square", "torus1d", "torus1d_d",
                           "torus1d_3", "torus2d"}) {
    auto doc = scenario_doc(name);
    ChartComplex c = complex_from_json(doc);
    Structure s = structure_from_json(doc, c);
    ThetaEngine e(c, s, Cutoffs{});
    std::vector<Point> gens;
    for (const auto& l : c.label_order) gens.push_back(*c.label(l));
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (std::size_t j = i; j < gens.size(); ++j) {
        Mu2Result r = mu2(c, s, gens[i], 1, gens[j], 1, Cutoffs{});
        INFO(name << " " << c.label_order[i] << "*" << c.label_order[j] << ": "
                  << format_product(c, "mu2", r.product) << " vs "
                  << format_product(c, "mult", e.multiply(gens[i], 1, gens[j], 1)));
        CHECK(r.product == e.multiply(gens[i], 1, gens[j], 1));
      }
  }
}
