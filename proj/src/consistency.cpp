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
#include <map>
#include <optional>
#include <random>
#include <set>

#include "jagged/error.hpp"
#include "jagged/paths.hpp"

namespace jag {

namespace {

bool strictly_inside(const RayPiece& p, const Vec2& y) {
  Rational s = line_param(p.a, p.b, y);
  return s > 0 && s < 1;
}

void check_clear(const RayPiece& p, const Vec2& y) {
  if (y == p.a || y == p.b) fail(ErrorKind::genericity, "path meets a ray endpoint; perturb the path");
}

// Wall crossings of the open segment p -> q inside one cell.
TruncatedSeries cross_interior(const Structure& d, const TruncatedSeries& s, int cell, const Vec2& p,
                               const Vec2& q) {
  std::map<Rational, std::vector<const RayPiece*>> hits;
  for (const auto* r : d.pieces_in(cell)) {
    if (r->edge >= 0) continue;
    Vec2 dir = r->b - r->a;
    if (cross(dir, p - r->a) == 0 || cross(dir, q - r->a) == 0) {
      if (cross(dir, q - p) != 0 && (strictly_inside(*r, p) || strictly_inside(*r, q)))
        fail(ErrorKind::genericity, "path endpoint lies on a ray");
      continue;
    }
    auto y = intersect_lines(p, q - p, r->a, dir);
    if (!y) continue;
    Rational t = line_param(p, q, *y);
    if (t <= 0 || t >= 1) continue;
    check_clear(*r, *y);
    if (strictly_inside(*r, *y)) hits[t].push_back(r);
  }
  TruncatedSeries out = s;
  for (const auto& [t, pieces] : hits) {
    for (const auto* r : pieces)
      if (cross(r->b - r->a, pieces[0]->b - pieces[0]->a) != 0)
        fail(ErrorKind::genericity, "path crosses two rays at one point; perturb the path");
    out = wall_cross_transform(out, pieces, p);
  }
  return out;
}

TruncatedSeries transport_series(const ChartComplex& c, const TruncatedSeries& s, const Transition& t, int cell) {
  const AlgebraSpec& a = s.algebra();
  TruncatedSeries out =
      TruncatedSeries::zero(make_algebra(a.rank, a.torder_cutoff, a.length_cutoff, c.torder_weights(cell)));
  for (const auto& [e, term] : s.terms()) out.add_term(t.apply(Layer::ptilde, e), term.coeff, term.length);
  return out;
}

}  // namespace

TruncatedSeries transport_across(const ChartComplex& c, const Structure& d, const TruncatedSeries& s,
                                 const Point& from, const std::vector<Point>& path) {
  TruncatedSeries cur = s;
  Point at = from;
  for (const auto& w : path) {
    if (c.locate(w.cell, w.x).kind != ChartComplex::Location::interior)
      fail(ErrorKind::geometry, "waypoint " + to_string(w) + " is not interior to its cell");
    if (w.cell == at.cell) {
      if (c.dim == 2) cur = cross_interior(d, cur, at.cell, Vec2(at.x), Vec2(w.x));
      at = w;
      continue;
    }
    Step st = step_across(c, at, w);
    if (c.dim == 2) {
      Vec2 hit(st.hit);
      cur = cross_interior(d, cur, at.cell, Vec2(at.x), hit);
      std::vector<const RayPiece*> on_edge;
      for (const auto* r : d.pieces_in(at.cell)) {
        if (r->edge != st.edge) continue;
        check_clear(*r, hit);
        if (strictly_inside(*r, hit)) on_edge.push_back(r);
      }
      if (!on_edge.empty()) cur = wall_cross_transform(cur, on_edge, Vec2(at.x));
      cur = transport_series(c, cur, st.transition, w.cell);
      cur = cross_interior(d, cur, w.cell, st.transition.map.apply(hit), Vec2(w.x));
    } else {
      cur = transport_series(c, cur, st.transition, w.cell);
    }
    at = w;
  }
  return cur;
}

std::string first_difference(const TruncatedSeries& a, const TruncatedSeries& b) {
  std::set<Exponent> keys;
  for (const auto& [e, t] : a.terms()) keys.insert(e);
  for (const auto& [e, t] : b.terms()) keys.insert(e);
  for (const auto& e : keys) {
    Rational x = a.coeff(e), y = b.coeff(e);
    if (x != y) return "z^" + to_string(e) + ": " + to_string(x) + " vs " + to_string(y);
  }
  return {};
}

namespace {

Vec2 centroid(const Cell& k) {
  Vec2 s(Rational(0), Rational(0));
  for (const auto& v : k.vertices) s = s + Vec2(v);
  return s * Rational(1, static_cast<long>(k.vertices.size()));
}

}  // namespace

std::vector<ConsistencySample> consistency_samples(const ChartComplex& c, const Structure& d,
                                                   const std::vector<Point>& ms, std::int64_t level,
                                                   std::uint64_t seed) {
  std::vector<ConsistencySample> out;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> pick(1, 1 << 20);
  auto gen = [&](int cell) { return generic_point(c, d, cell, static_cast<std::uint64_t>(pick(rng))); };
  auto add = [&](const Point& x1, const std::vector<Point>& path) {
    for (const auto& m : ms) out.push_back({m, level, x1, path.back(), path});
  };
  for (const auto& g : c.gluings) {
    int cell = g.a.cell;
    std::vector<std::pair<Rational, Rational>> ranges;
    if (g.split) ranges = {{Rational(0), *g.split}, {*g.split, Rational(1)}};
    else ranges = {{Rational(0), Rational(1)}};
    for (const auto& [lo, hi] : ranges) {
      Rational s = lo + (hi - lo) * Rational(pick(rng) % 89 + 5, 99);
      if (c.dim == 1) {
        // Waypoints in the two cells on either side of the shared vertex.
        Crossing cr = c.cross(cell, g.a.edge, 0);
        Point x1 = gen(cell), x2 = gen(cr.to_cell);
        add(x1, {x2});
        continue;
      }
      auto [e0, e1] = c.edge_endpoints(cell, g.a.edge);
      Vec2 y = Vec2(e0) + (Vec2(e1) - Vec2(e0)) * s;
      Crossing cr = c.cross(cell, g.a.edge, s);
      Rational eps(1, 29);
      Vec2 ya = y + (centroid(c.cells[cell]) - y) * eps;
      Vec2 yb0 = cr.transition.map.apply(y);
      Vec2 yb = yb0 + (centroid(c.cells[cr.to_cell]) - yb0) * eps;
      Point x1 = gen(cell), x2 = gen(cr.to_cell);
      add(x1, {{cell, ya.coords()}, {cr.to_cell, yb.coords()}, x2});
    }
  }
  if (c.dim == 2) {
    for (int k = 0; k < static_cast<int>(c.cells.size()); ++k) {
      bool interior = false;
      for (const auto* r : d.pieces_in(k)) interior |= r->edge < 0;
      for (int rep = 0; rep < (interior ? 2 : 1); ++rep) add(gen(k), {gen(k)});
    }
  }
  return out;
}

bool ConsistencyReport::ok() const {
  return std::all_of(lines.begin(), lines.end(), [](const ConsistencyLine& l) { return l.ok; });
}

ConsistencyReport check_consistency(const ChartComplex& c, const Structure& d,
                                    const std::vector<ConsistencySample>& samples, const Cutoffs& cut) {
  ConsistencyReport rep;
  // Crossing edges can lower the t-order of a term, and crossing a ray
  // against a monomial's direction expands (1 + z)^-N, so the source lift is
  // transported in a wider algebra and compared on terms of short length.
  Cutoffs wide = cut;
  wide.torder = 2 * cut.torder + 2;
  wide.max_length = 3 * cut.max_length + 2;
  for (const auto& given : samples) {
    if (given.path.empty() || !(given.path.back() == given.x2))
      fail(ErrorKind::domain, "connecting path must end at x2");
    // Endpoints that turn out to be special for this m are redrawn in
    // their cells; cells are convex, so the waypoints stay valid.
    ConsistencySample s = given;
    std::optional<TruncatedSeries> here_, moved_;
    for (std::uint64_t attempt = 1;; ++attempt) {
      try {
        here_ = lift(c, d, s.m, s.level, s.x2, cut);
        moved_ = transport_across(c, d, lift(c, d, s.m, s.level, s.x1, wide), s.x1, s.path);
        break;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::genericity || attempt > 16) throw;
        s.x1 = generic_point(c, d, s.x1.cell, 104729 * attempt + 1);
        s.x2 = generic_point(c, d, s.x2.cell, 104729 * attempt + 2);
        s.path.back() = s.x2;
      }
    }
    const TruncatedSeries& here = *here_;
    const TruncatedSeries& moved = *moved_;
    TruncatedSeries there = TruncatedSeries::zero(here.algebra_ptr());
    for (const auto& [e, t] : moved.terms())
      if (t.length <= cut.max_length || here.coeff(e) != 0) there.add_term(e, t.coeff, 0);
    ConsistencyLine line;
    line.sample = s;
    line.detail = first_difference(there, here);
    line.ok = line.detail.empty();
    rep.lines.push_back(line);
  }
  return rep;
}

}  // namespace jag
