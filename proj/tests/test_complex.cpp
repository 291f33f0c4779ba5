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
#include "jagged/complex.hpp"
#include "jagged/error.hpp"
#include "scenario_util.hpp"

using namespace jag;

namespace {

Coords xy(const char* a, const char* b) { return {parse_rational(a), parse_rational(b)}; }

AffineMap mat(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) { return {2, {a, b, c, d}, {0, 0}}; }

}  // namespace

TEST_CASE("b1 loads with two cells and one singular point") {
  ValidationReport rep;
  ChartComplex c = complex_from_json(scenario_text("b1"), &rep);
  CHECK(rep.ok());
  CHECK(c.cells.size() == 2);
  int singular = 0;
  for (const auto& g : c.gluings) singular += g.split.has_value();
  CHECK(singular == 1);
  CHECK(c.gluings[0].kink == 1);
}

TEST_CASE("transposed gluing matrix is rejected") {
  auto doc = scenario_doc("b1");
  doc["gluings"][0]["branches"][1]["matrix"] = nlohmann::json::parse("[[1,-1],[0,1]]");
  ValidationReport rep;
  complex_from_json(doc, &rep);
  CHECK_FALSE(rep.ok());
  bool named = false;
  for (const auto& l : rep.checks)
    if (!l.ok && l.detail.find("gluings not mutually inverse") != std::string::npos) named = true;
  CHECK(named);
  CHECK_THROWS_AS(complex_from_json(doc), Error);
}

TEST_CASE("b1 monodromy around P is a unipotent shear") {
  ChartComplex c = complex_from_json(scenario_text("b1"));
  std::vector<Point> loop{{0, xy("-1/8", "3/4")}, {1, xy("1/8", "5/8")}, {1, xy("1/4", "1/4")},
                          {0, xy("-1/4", "1/4")}, {0, xy("-1/8", "3/4")}};
  AffineMap m = monodromy(c, loop);
  CHECK(m.det() == 1);
  CHECK(m.m != AffineMap::identity(2).m);
  CHECK(conjugate_gl2(m, mat(1, 1, 0, 1), true));
  CHECK_FALSE(conjugate_gl2(m, AffineMap::identity(2), false));
}

TEST_CASE("looijenga monodromy") {
  ChartComplex five = build_looijenga({-1, -1, -1, -1, -1});
  CHECK(monodromy(five, looijenga_loop(five)).m == mat(1, 1, -1, 0).m);
  ChartComplex three = build_looijenga({1, 1, 1});
  CHECK(monodromy(three, looijenga_loop(three)).m == AffineMap::identity(2).m);
  CHECK_THROWS_AS(build_looijenga({1, 1}), Error);
}

TEST_CASE("m_phi and parallel transport on b1") {
  ChartComplex c = complex_from_json(scenario_text("b1"));
  Germ x = m_phi(c, {0, xy("-1", "0")}, 1);
  CHECK(x.exponent == Exponent{-1, 0, 0, 1});
  Germ y = m_phi(c, {1, xy("1", "0")}, 1);
  CHECK(y.exponent == Exponent{1, 0, 1, 1});
  CHECK(c.torder(1, y.exponent) == 0);
  CHECK_THROWS_AS(m_phi(c, {0, xy("0", "1/2")}, 1), Error);
  CHECK_THROWS_AS(m_phi(c, {0, xy("-1", "0")}, 0), Error);

  Germ at{Layer::ptilde, x.exponent, {0, xy("-1/4", "1/8")}};
  Germ below = parallel_transport(c, at, {{1, xy("1/8", "1/4")}});
  CHECK(below.exponent == Exponent{-1, 0, 0, 1});
  CHECK(c.torder(1, below.exponent) == 1);
  Germ above = parallel_transport(c, {Layer::ptilde, x.exponent, {0, xy("-1/8", "3/4")}}, {{1, xy("1/8", "5/8")}});
  CHECK(above.exponent == Exponent{-1, 1, 0, 1});
  // Vect at (0,h) is (-1,-h) before crossing.
  Coords v = vect(c, {Layer::ptilde, x.exponent, {0, xy("0", "1/3")}});
  CHECK(v == xy("-1", "-1/3"));
}

TEST_CASE("rational points") {
  ChartComplex b1 = complex_from_json(scenario_text("b1"));
  CHECK(enumerate_rational_points(b1, 1).size() == 4);
  ChartComplex sq = complex_from_json(scenario_text("toric_square"));
  CHECK(enumerate_rational_points(sq, 2).size() == 9);
  CHECK(enumerate_rational_points(sq, 3).size() == 16);
}
