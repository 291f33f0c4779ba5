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

#include "jagged/complex.hpp"
#include "jagged/error.hpp"

namespace jag {

// Transition taking the chart of `from` to the chart of `to.cell` along a
// straight segment that crosses exactly one edge.
Step step_across(const ChartComplex& c, const Point& from, const Point& to) {
  std::vector<Step> found;
  for (int e = 0; e < c.num_edges(from.cell); ++e) {
    auto [gi, is_a] = c.gluing_of(from.cell, e);
    if (gi < 0) continue;
    const Gluing& g = c.gluings[gi];
    if ((is_a ? g.b.cell : g.a.cell) != to.cell) continue;
    const auto& branches = is_a ? g.forward : g.backward;
    AffineFn n = c.outward_normal(from.cell, e);
    for (const auto& t : branches) {
      Coords q = t.map.inverse().apply(to.x);
      Rational n0 = n(from.x), n1 = n(q);
      if (!(n0 <= 0 && n1 > 0)) continue;
      if (c.dim == 1) {
        found.push_back({e, 0, Coords{c.edge_endpoints(from.cell, e).first}, t});
        continue;
      }
      // Crossing point y = from + lambda (q - from) with n(y) = 0.
      Rational lambda = n0 / (n0 - n1);
      Vec2 a(from.x), b(q);
      Vec2 y = a + (b - a) * lambda;
      auto [p0, p1] = c.edge_endpoints(from.cell, e);
      Rational s = line_param(Vec2(p0), Vec2(p1), y);
      if (s <= 0 || s >= 1) continue;
      auto sp = c.singular_param(from.cell, e);
      if (sp && s == *sp) fail(ErrorKind::geometry, "path passes through a singular point");
      Crossing cr = c.cross(from.cell, e, s);
      if (cr.transition.map == t.map) found.push_back({e, s, y.coords(), t});
    }
  }
  if (found.size() != 1)
    fail(ErrorKind::geometry, "cannot join " + to_string(from) + " to " + to_string(to) + " by a single crossing");
  return found[0];
}

namespace {

std::vector<Transition> path_transitions(const ChartComplex& c, const Point& start,
                                         const std::vector<Point>& path) {
  std::vector<Transition> out;
  Point cur = start;
  for (const auto& w : path) {
    if (c.locate(w.cell, w.x).kind != ChartComplex::Location::interior)
      fail(ErrorKind::geometry, "waypoint " + to_string(w) + " is not interior to its cell");
    if (w.cell != cur.cell) out.push_back(step_across(c, cur, w).transition);
    cur = w;
  }
  return out;
}

}  // namespace


Germ parallel_transport(const ChartComplex& c, const Germ& g, const std::vector<Point>& path) {
  Germ r = g;
  for (const auto& t : path_transitions(c, g.base, path)) r.exponent = t.apply(r.layer, r.exponent);
  if (!path.empty()) r.base = path.back();
  return r;
}

Coords vect(const ChartComplex& c, const Germ& g) {
  int n = c.dim;
  Coords v(n);
  for (int i = 0; i < n; ++i) v[i] = Rational(static_cast<long>(g.exponent[i]));
  std::int64_t d = 0;
  if (g.layer == Layer::aff_dual) d = g.exponent[n];
  if (g.layer == Layer::ptilde) d = g.exponent[n + 1];
  for (int i = 0; i < n; ++i) v[i] -= Rational(static_cast<long>(d)) * g.base.x[i];
  return v;
}

Germ m_phi(const ChartComplex& c, const Point& m, std::int64_t level) {
  if (level <= 0) fail(ErrorKind::domain, "level must be positive");
  if (c.locate(m.cell, m.x).kind == ChartComplex::Location::outside)
    fail(ErrorKind::domain, "point " + to_string(m) + " is not in its cell");
  Germ g;
  g.layer = Layer::ptilde;
  g.base = m;
  Rational l(static_cast<long>(level));
  for (const auto& x : m.x) {
    Rational v = x * l;
    if (!is_integer(v)) fail(ErrorKind::domain, "point " + to_string(m) + " is not in B(1/" + std::to_string(level) + " Z)");
    g.exponent.push_back(to_int64(v));
  }
  Rational h = c.has_phi ? c.phi.at(m.cell)(m.x) * l : Rational(0);
  if (!is_integer(h)) fail(ErrorKind::domain, "phi takes a non-integral value at " + to_string(m));
  g.exponent.push_back(to_int64(h));
  g.exponent.push_back(level);
  return g;
}

std::vector<Point> enumerate_rational_points(const ChartComplex& c, std::int64_t level) {
  if (level <= 0) fail(ErrorKind::domain, "level must be positive");
  std::set<Point> out;
  Rational l(static_cast<long>(level));
  for (std::size_t k = 0; k < c.cells.size(); ++k) {
    const auto& v = c.cells[k].vertices;
    std::vector<std::int64_t> lo(c.dim), hi(c.dim);
    for (int i = 0; i < c.dim; ++i) {
      Rational mn = v[0][i], mx = v[0][i];
      for (const auto& p : v) {
        mn = std::min(mn, p[i]);
        mx = std::max(mx, p[i]);
      }
      lo[i] = to_int64(mn * l);
      hi[i] = to_int64(mx * l);
    }
    auto visit = [&](const Coords& x) {
      Point p{static_cast<int>(k), x};
      if (c.locate(p.cell, x).kind == ChartComplex::Location::outside) return;
      if (c.is_singular_vertex(p)) return;
      out.insert(c.canonical(p));
    };
    if (c.dim == 1) {
      for (auto i = lo[0]; i <= hi[0]; ++i) visit({Rational(static_cast<long>(i)) / l});
    } else {
      for (auto i = lo[0]; i <= hi[0]; ++i)
        for (auto j = lo[1]; j <= hi[1]; ++j)
          visit({Rational(static_cast<long>(i)) / l, Rational(static_cast<long>(j)) / l});
    }
  }
  return {out.begin(), out.end()};
}

AffineMap monodromy(const ChartComplex& c, const std::vector<Point>& loop) {
  if (loop.size() < 2 || !(loop.front() == loop.back()))
    fail(ErrorKind::domain, "monodromy needs a closed loop");
  std::vector<Point> rest(loop.begin() + 1, loop.end());
  AffineMap total = AffineMap::identity(c.dim);
  for (const auto& t : path_transitions(c, loop.front(), rest)) total = total.then(t.map);
  total.t.assign(c.dim, 0);
  return total;
}

bool conjugate_gl2(const AffineMap& a, const AffineMap& b, bool require_sl2) {
  const int r = 4;
  for (int p = -r; p <= r; ++p)
    for (int q = -r; q <= r; ++q)
      for (int s = -r; s <= r; ++s)
        for (int u = -r; u <= r; ++u) {
          int det = p * u - q * s;
          if (det != 1 && !(det == -1 && !require_sl2)) continue;
          AffineMap g;
          g.dim = 2;
          g.m = {p, q, s, u};
          g.t = {0, 0};
          AffineMap ga = AffineMap{2, a.m, {0, 0}}.then(g);
          AffineMap bg = g.then(AffineMap{2, b.m, {0, 0}});
          if (ga.m == bg.m) return true;
        }
  return false;
}

ChartComplex build_looijenga(const std::vector<std::int64_t>& selfints) {
  std::size_t n = selfints.size();
  if (n < 3) fail(ErrorKind::unsupported, "Looijenga fans need at least three rays");
  ChartComplex c;
  c.name = "looijenga";
  c.dim = 2;
  c.has_phi = false;
  for (std::size_t i = 0; i < n; ++i) {
    Rational d(static_cast<long>(selfints[i]));
    // Cone sigma_{i,i+1} in the chart psi_i.
    c.cells.push_back({static_cast<int>(i), {{0, 0}, {0, 1}, {-1, -d}}});
  }
  for (std::size_t i = 0; i < n; ++i) {
    Gluing g;
    g.a = {static_cast<int>(i), 2};
    g.b = {static_cast<int>((i + 1) % n), 0};
    Transition t;
    t.map.dim = 2;
    // psi_{i+1} o psi_i^{-1}: (0,1) -> (1,0) and (-1,-D_i^2) -> (0,1).
    t.map.m = {-selfints[i], 1, -1, 0};
    t.map.t = {0, 0};
    t.twist = AffineFn::zero(2);
    g.forward = {t};
    g.backward = {t.inverse()};
    c.gluings.push_back(g);
  }
  c.singular_vertices.push_back({0, {0, 0}});
  c.finalize();
  return c;
}

std::vector<Point> looijenga_loop(const ChartComplex& c) {
  std::vector<Point> loop;
  int n = static_cast<int>(c.cells.size());
  for (int k = 0; k <= n; ++k) {
    int i = (n - k) % n;
    const auto& v = c.cells[i].vertices;
    Coords x{(v[0][0] + v[1][0] + v[2][0]) / 3, (v[0][1] + v[1][1] + v[2][1]) / 3};
    loop.push_back({i, x});
  }
  return loop;
}

ChartComplex truncated_cone(const ChartComplex& base, std::int64_t height) {
  if (base.dim != 1) fail(ErrorKind::unsupported, "truncated cones are built over one-dimensional complexes");
  if (height < 2) fail(ErrorKind::domain, "cone height must be at least 2");
  Rational h(static_cast<long>(height));
  ChartComplex c;
  c.name = base.name + "-cone";
  c.dim = 2;
  c.has_phi = base.has_phi;
  for (const auto& cell : base.cells) {
    Rational a = cell.vertices[0][0], b = cell.vertices[1][0];
    c.cells.push_back({cell.id, {{a, 1}, {b, 1}, {b * h, h}, {a * h, h}}});
  }
  // Base endpoint 0 sits on the left cone edge (3), endpoint 1 on the right (1).
  auto cone_edge = [](int e) { return e == 0 ? 3 : 1; };
  auto homogenize = [](const Transition& t) {
    Transition r;
    r.map.dim = 2;
    r.map.m = {t.map.m[0], t.map.t[0], 0, 1};
    r.map.t = {0, 0};
    r.twist = {{t.twist.slope[0], t.twist.constant}, 0};
    return r;
  };
  for (const auto& g : base.gluings) {
    Gluing k;
    k.a = {g.a.cell, cone_edge(g.a.edge)};
    k.b = {g.b.cell, cone_edge(g.b.edge)};
    k.forward = {homogenize(g.forward[0])};
    k.backward = {homogenize(g.backward[0])};
    k.explicit_twist = g.explicit_twist;
    c.gluings.push_back(k);
  }
  if (c.has_phi)
    for (const auto& f : base.phi) c.phi.push_back({{f.slope[0], f.constant}, 0});
  c.finalize();
  return c;
}

}  // namespace jag
