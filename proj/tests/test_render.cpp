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
#include "jagged/render.hpp"
#include "scenario_util.hpp"

using namespace jag;

namespace {

std::size_t count(const std::string& s, const std::string& what) {
  std::size_t n = 0;
  for (auto at = s.find(what); at != std::string::npos; at = s.find(what, at + 1)) ++n;
  return n;
}

struct B1Paths {
  nlohmann::json doc = scenario_doc("b1");
  ChartComplex c = complex_from_json(doc);
  Structure d = structure_from_json(doc, c);
  Traces t;
  B1Paths() {
    Point x{1, {make_rational(1, 8), make_rational(1, 4)}};
    int i = 0;
    for (auto& p : enumerate_jagged(c, d, *c.label("X"), 1, x, Cutoffs{}))
      t.paths.push_back({"X-" + std::to_string(i++), p});
  }
};

}  // namespace

TEST_CASE("b1 with the two paths from X") {
  B1Paths b;
  std::string svg = render_svg(b.c, b.d, b.t, RenderPlan{});
  CHECK(count(svg, "<polyline") == 2);
  CHECK(count(svg, "class=\"bend\"") == 1);
  // The bend sits on WZ (x = 0) at height 1/3, below P on the ray d2.
  CHECK(svg.find("class=\"bend\" data-ray=\"d2\" cx=\"184.00\" cy=\"130.67\"") != std::string::npos);
  CHECK(count(svg, "class=\"singular\"") == 1);
  CHECK(svg == render_svg(b.c, b.d, b.t, RenderPlan{}));
  for (const char* group : {"id=\"cells\"", "id=\"edges\"", "id=\"rays\"", "id=\"paths\""})
    CHECK(svg.find(group) != std::string::npos);
}

TEST_CASE("scenario without traces draws cells and rays only") {
  B1Paths b;
  std::string svg = render_svg(b.c, b.d, {}, RenderPlan{});
  CHECK(count(svg, "<polygon class=\"cell\"") == 2);
  CHECK(count(svg, "class=\"ray\"") >= 2);
  CHECK(count(svg, "<polyline") == 0);
}

TEST_CASE("traces round-trip through json") {
  B1Paths b;
  nlohmann::json j = traces_to_json(b.d, b.t);
  Traces back = traces_from_json(j, b.c, b.d);
  CHECK(traces_to_json(b.d, back) == j);
  CHECK(render_svg(b.c, b.d, back, RenderPlan{}) == render_svg(b.c, b.d, b.t, RenderPlan{}));
}

TEST_CASE("dangling references are render errors") {
  B1Paths b;
  Traces bad = b.t;
  bad.paths[0].path.segments[0].cell = 7;
  CHECK_THROWS_AS(render_svg(b.c, b.d, bad, RenderPlan{}), Error);
  nlohmann::json j = traces_to_json(b.d, b.t);
  for (auto& p : j["paths"])
    for (auto& bend : p["bends"]) bend["ray"] = "nowhere";
  try {
    traces_from_json(j, b.c, b.d);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::render);
  }
}

TEST_CASE("row layout separates overlapping charts") {
  B1Paths b;
  RenderPlan plan;
  plan.layout = RenderPlan::Layout::row;
  std::string svg = render_svg(b.c, b.d, {}, plan);
  CHECK(count(svg, "edge cut") == 2);
}

TEST_CASE("tree traces on R/3Z") {
  auto doc = scenario_doc("torus1d_3");
  ChartComplex c = complex_from_json(doc);
  Structure d = structure_from_json(doc, c);
  MumfordData data = mumford_from_json(doc);
  MuResult r = mu_torus(data, {0, 1, 3, 2}, {{0}, {make_rational(1, 2)}, {1}}, 8);
  REQUIRE(!r.trees.empty());
  Traces t;
  t.trees = r.trees;
  std::string svg = render_svg(c, d, t, RenderPlan{});
  CHECK(count(svg, "class=\"tree\"") == static_cast<std::size_t>(r.trees.size()));
  CHECK(count(svg, "contracted") >= 2);
  Traces back = traces_from_json(traces_to_json(d, t), c, d);
  CHECK(back.trees[0].tree.to_string() == r.trees[0].tree.to_string());
}
