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
#include "jagged/theta.hpp"
#include "scenario_util.hpp"

using namespace jag;

namespace {

struct Loaded {
  explicit Loaded(const std::string& name)
      : doc(scenario_doc(name)), c(complex_from_json(doc)), d(structure_from_json(doc, c)) {}
  nlohmann::json doc;
  ChartComplex c;
  Structure d;
};

std::vector<std::string> relation_strings(const std::string& name, int degree) {
  Loaded s(name);
  ThetaEngine e(s.c, s.d, Cutoffs{});
  RelationSet r = find_relations(e, degree);
  std::vector<std::string> out;
  for (const auto& rel : r.relations) out.push_back(format_relation(rel, r.generators));
  return out;
}

}  // namespace

TEST_CASE("poly arithmetic") {
  Poly t = Poly::monomial(1, 1);
  Poly a = (Poly(Rational(1)) + t) * (Poly(Rational(1)) - t);
  CHECK(a.to_string() == "1 - t^2");
  CHECK(gcd(a, Poly(Rational(1)) + t) == Poly(Rational(1)) + t);
  RatFunc r(a, Poly(Rational(2)) + t * Poly(Rational(2)));
  CHECK(r.num() == (Poly(Rational(1)) - t) * Poly(Rational(1, 2)));
  CHECK(r.den() == Poly(Rational(1)));
}

TEST_CASE("b1: X*Y = t*Z^2 + t*W*Z") {
  Loaded s("b1");
  ThetaEngine e(s.c, s.d, Cutoffs{});
  ThetaExpansion xy = e.multiply(*s.c.label("X"), 1, *s.c.label("Y"), 1);
  CHECK(format_product(s.c, "X*Y", xy) == "X*Y = t*Z^2 + t*W*Z");
  CHECK(xy == e.multiply(*s.c.label("Y"), 1, *s.c.label("X"), 1));
}

TEST_CASE("b1 relations at degree 2") {
  auto r = relation_strings("b1", 2);
  REQUIRE(r.size() == 1);
  CHECK(r[0] == "X*Y - t*Z^2 - t*W*Z = 0");
}

TEST_CASE("toric square relations at degree 2") {
  auto r = relation_strings("toric_square", 2);
  REQUIRE(r.size() == 1);
  CHECK(r[0] == "A*C - B*D = 0");
}

TEST_CASE("theta restriction") {
  Loaded s("b1");
  auto x = s.c.label("X");
  CHECK(theta_restrict(s.c, *x, 1, 0) == Exponent{-1, 0, 0, 1});
  CHECK_FALSE(theta_restrict(s.c, *x, 1, 1).has_value());
}

void check_relations(const std::string& name, int degree, const std::vector<std::string>& expected) {
  Loaded s(name);
  ThetaEngine e(s.c, s.d, Cutoffs{});
  RelationSet r = find_relations(e, degree);
  std::vector<Relation> want;
  for (const auto& x : expected) want.push_back(parse_relation(x, r.generators));
  std::string got;
  for (const auto& rel : r.relations) got += format_relation(rel, r.generators) + "; ";
  INFO(name << ": " << got);
  CHECK(same_relations(r.relations, want));
}

TEST_CASE("relation parsing") {
  std::vector<std::string> g{"X", "Y", "Z", "W"};
  Relation r = parse_relation("XY = t(Z^2+WZ)", g);
  CHECK(format_relation(r, g) == "X*Y - t*Z^2 - t*W*Z = 0");
  CHECK(same_relations({r}, {parse_relation("2*X*Y - 2t*Z^2 - 2*t*W*Z", g)}));
  CHECK_FALSE(same_relations({r}, {parse_relation("X*Y - t*Z^2", g)}));
  CHECK_THROWS_AS(parse_relation("X*Q", g), Error);
}

TEST_CASE("b2 relations") {
  check_relations("b2", 2, {"WY - ZU", "XY - t(U^2+UW)", "XZ - t(W^2+WU)"});
}

TEST_CASE("two-singularity square relations") {
  check_relations("square2sing", 2,
                  {"RV - SU", "XS - t(R^2+UR)", "XV - t(U^2+UR)", "RY - t(S^2+SV)", "UY - t(V^2+VS)",
                   "XY - t^2(UV+US+RV+RS)"});
}

TEST_CASE("b3 relations") { check_relations("b3", 2, {"XY - t(U^2+UW)", "ZW - t(U^2+YU)"}); }

TEST_CASE("degenerate cubic") {
  Loaded s("cubic");
  ThetaEngine e(s.c, s.d, Cutoffs{});
  auto X = *s.c.label("X"), Y = *s.c.label("Y"), Z = *s.c.label("Z"), U = *s.c.label("U");
  ThetaExpansion xy = e.multiply(X, 1, Y, 1);
  CHECK(xy.coeffs.size() == 2);
  CHECK(e.multiply(U, 1, U, 1) == e.single(U, 2));
  ThetaExpansion left = e.multiply(xy, e.single(Z, 1));
  ThetaExpansion right = e.multiply(e.single(X, 1), e.multiply(Y, 1, Z, 1));
  CHECK(left == right);
  CHECK(format_product(s.c, "X*Y*Z", left) == "X*Y*Z = t*U^2*X + t*U^2*Y + t*U^2*Z + (t + t^2)*U^3");
  check_relations("cubic", 3, {"XYZ = t((1+t)U^3+(X+Y+Z)U^2)"});
}

TEST_CASE("b3 without the ray from U is inconsistent below slope 1/2") {
  auto doc = scenario_doc("b3");
  auto& rays = doc["rays"];
  for (std::size_t i = 0; i < rays.size(); ++i)
    if (rays[i]["name"] == "p") rays.erase(i);
  ChartComplex c = complex_from_json(doc);
  Structure d = structure_from_json(doc, c);
  auto rep = check_consistency(c, d, consistency_samples(c, d, enumerate_rational_points(c, 1), 1, 0), Cutoffs{});
  CHECK_FALSE(rep.ok());
  auto below = [](const Point& x) { return x.cell == 0 && x.x[1] * 2 < x.x[0]; };
  bool witness = false;
  for (const auto& l : rep.lines) witness |= !l.ok && (below(l.sample.x1) || below(l.sample.x2));
  CHECK(witness);
}

TEST_CASE("b1 product does not depend on the position of the singular point") {
  Loaded ref("b1");
  ThetaEngine e0(ref.c, ref.d, Cutoffs{});
  ThetaExpansion want = e0.multiply(*ref.c.label("X"), 1, *ref.c.label("Y"), 1);
  for (const char* pos : {"1/4", "49/100", "51/100", "3/4"}) {
    auto doc = scenario_doc("b1");
    doc["singular_points"][0]["position"] = pos;
    for (auto& r : doc["rays"]) r["base"][1][1] = pos;
    ChartComplex c = complex_from_json(doc);
    Structure d = structure_from_json(doc, c);
    ThetaEngine e(c, d, Cutoffs{});
    INFO(pos);
    CHECK(e.multiply(*c.label("X"), 1, *c.label("Y"), 1) == want);
  }
}
