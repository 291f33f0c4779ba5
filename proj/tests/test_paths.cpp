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
#include "jagged/paths.hpp"
#include "scenario_util.hpp"

using namespace jag;

namespace {

Coords xy(const char* a, const char* b) { return {parse_rational(a), parse_rational(b)}; }

struct B1 {
  nlohmann::json doc = scenario_doc("b1");
  ChartComplex c = complex_from_json(doc);
  Structure d = structure_from_json(doc, c);
};

}  // namespace

TEST_CASE("b1: one straight path from X into its own cell") {
  B1 b;
  auto paths = enumerate_jagged(b.c, b.d, *b.c.label("X"), 1, {0, xy("-1/3", "1/5")}, Cutoffs{});
  REQUIRE(paths.size() == 1);
  CHECK(paths[0].bends.empty());
  CHECK(paths[0].segments.size() == 1);
}

TEST_CASE("b1: two paths from X to (1/8,1/4), one bending at height 1/3") {
  B1 b;
  Point x{1, xy("1/8", "1/4")};
  auto paths = enumerate_jagged(b.c, b.d, *b.c.label("X"), 1, x, Cutoffs{});
  REQUIRE(paths.size() == 2);
  int bent = 0;
  for (const auto& p : paths) {
    if (p.bends.empty()) continue;
    ++bent;
    REQUIRE(p.bends.size() == 1);
    const auto& after = p.segments[p.bends[0].segment];
    CHECK(after.a == xy("0", "1/3"));
  }
  CHECK(bent == 1);
  TruncatedSeries l = sum_paths(b.c, paths, 1, Cutoffs{});
  auto alg = lift_algebra(b.c, 1, Cutoffs{});
  TruncatedSeries expect = TruncatedSeries::monomial(alg, {-1, 0, 0, 1}) + TruncatedSeries::monomial(alg, {-1, 1, 0, 1});
  CHECK(l == expect);
}

TEST_CASE("b1: lift of X is the same at several points of the lower cell") {
  B1 b;
  auto alg = lift_algebra(b.c, 1, Cutoffs{});
  TruncatedSeries expect = TruncatedSeries::monomial(alg, {-1, 0, 0, 1}) + TruncatedSeries::monomial(alg, {-1, 1, 0, 1});
  for (auto x : {xy("1/8", "1/4"), xy("1/3", "1/5"), xy("1/7", "2/7"), xy("3/5", "1/7")}) {
    CHECK(lift(b.c, b.d, *b.c.label("X"), 1, {1, x}, Cutoffs{}) == expect);
  }
}

TEST_CASE("b1: W and Z lift to single monomials") {
  B1 b;
  for (const char* name : {"W", "Z"}) {
    auto s = lift(b.c, b.d, *b.c.label(name), 1, {1, xy("1/8", "1/4")}, Cutoffs{});
    CHECK(s.size() == 1);
  }
}

TEST_CASE("toric square: exactly one path") {
  auto doc = scenario_doc("toric_square");
  ChartComplex c = complex_from_json(doc);
  Structure d = structure_from_json(doc, c);
  for (const char* name : {"A", "B", "C", "D"}) {
    auto paths = enumerate_jagged(c, d, *c.label(name), 1, {0, xy("2/7", "3/5")}, Cutoffs{});
    CHECK(paths.size() == 1);
  }
}

TEST_CASE("non-generic targets are refused") {
  B1 b;
  CHECK_THROWS_AS(enumerate_jagged(b.c, b.d, *b.c.label("X"), 1, {1, xy("0", "1/4")}, Cutoffs{}), Error);
  Point g = generic_point(b.c, b.d, 1, 3);
  CHECK_NOTHROW(check_generic(b.c, b.d, g));
  CHECK(generic_point(b.c, b.d, 1, 3) == g);
}

TEST_CASE("b1 structure is consistent") {
  B1 b;
  std::vector<Point> ms;
  for (const char* n : {"X", "Y", "Z", "W"}) ms.push_back(*b.c.label(n));
  auto samples = consistency_samples(b.c, b.d, ms, 1, 0);
  CHECK(samples.size() == 16);
  auto rep = check_consistency(b.c, b.d, samples, Cutoffs{});
  for (const auto& l : rep.lines) CHECK_MESSAGE(l.ok, l.detail);
}

TEST_CASE("b1 without rays is inconsistent") {
  B1 b;
  Structure bare = b.d.without("d1", b.c).without("d2", b.c);
  auto samples = consistency_samples(b.c, bare, {*b.c.label("X")}, 1, 0);
  CHECK_FALSE(check_consistency(b.c, bare, samples, Cutoffs{}).ok());
}

TEST_CASE("bundled surfaces are consistent") {
  for (const char* name : {"b2", "square2sing", "b3", "cubic"}) {
    auto doc = scenario_doc(name);
    ChartComplex c = complex_from_json(doc);
    Structure d = structure_from_json(doc, c);
    for (std::int64_t level : {1, 2}) {
      auto rep = check_consistency(c, d, consistency_samples(c, d, enumerate_rational_points(c, level), level, 0),
                                   Cutoffs{});
      INFO(std::string(name) << " level " << level);
      CHECK(rep.ok());
    }
  }
}

TEST_CASE("broken lines on the cone over R/Z project to jagged paths") {
  auto doc = scenario_doc("torus1d");
  ChartComplex c = complex_from_json(doc);
  Cutoffs cut;
  cut.torder = 8;
  for (std::int64_t level = 1; level <= 2; ++level)
    for (long j = 0; j < level; ++j)
      for (auto [x, h] : {std::pair{make_rational(1, 3), make_rational(5, 4)},
                          std::pair{make_rational(71, 97), make_rational(13, 7)}}) {
        Point m{0, {make_rational(j, level)}};
        for (std::int64_t height : {8, 16}) {
          ConeMatch r = cone_correspondence(c, m, level, Point{0, {x}}, h, cut, height);
          std::string why;
          for (const auto& p : r.problems) why += p + "\n";
          INFO("level " << level << " m " << to_string(m.x) << " height " << height << "\n" << why);
          CHECK(r.ok());
          CHECK(r.jagged > 2);
          CHECK(r.jagged == r.broken);
        }
      }
}
