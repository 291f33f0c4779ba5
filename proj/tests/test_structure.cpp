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
#include "jagged/error.hpp"
#include "jagged/structure.hpp"
#include "scenario_util.hpp"

using namespace jag;

TEST_CASE("b1 rays run along the edge on both sides") {
  auto doc = scenario_doc("b1");
  ChartComplex c = complex_from_json(doc);
  Structure s = structure_from_json(doc, c);
  REQUIRE(s.rays.size() == 2);
  CHECK(s.pieces().size() == 4);
  for (const auto& p : s.pieces()) CHECK(p.edge >= 0);
  // Ray towards W ends at W, in the chart of either cell.
  for (const auto& p : s.pieces())
    if (p.ray == 0) CHECK(p.b == Vec2(Rational(0), Rational(1)));
}

TEST_CASE("bend expansion for X crossing below P") {
  auto doc = scenario_doc("b1");
  ChartComplex c = complex_from_json(doc);
  Structure s = structure_from_json(doc, c);
  std::vector<const RayPiece*> below;
  for (const auto* p : s.pieces_in(0))
    if (p->ray == 1) below.push_back(p);
  REQUIRE(below.size() == 1);
  Exponent x{-1, 0, 0, 1};
  Vec2 side(Rational(-1, 2), Rational(1, 4));
  CHECK(crossing_exponent(*below[0], x, side) == 1);
  auto alg = make_algebra(4, 6, 8, c.torder_weights(0));
  auto terms = bend_expansion(below, x, side, alg);
  REQUIRE(terms.size() == 2);
  bool found_w = false;
  for (const auto& t : terms)
    if (t.increment == Exponent{0, 1, 0, 0}) found_w = t.coeff == 1;
  CHECK(found_w);
}

TEST_CASE("wall monomials must point back along the ray") {
  auto doc = scenario_doc("b1");
  doc["rays"][0]["function"][0]["exponent"] = nlohmann::json::parse("[0, 1, 0]");
  ChartComplex c = complex_from_json(doc);
  CHECK_THROWS_AS(structure_from_json(doc, c), Error);
}
