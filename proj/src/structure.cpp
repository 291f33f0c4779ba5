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

#include "jagged/structure.hpp"

#include <optional>
#include <numeric>

#include "jagged/error.hpp"
#include "jagged/json_util.hpp"

namespace jag {

namespace {

struct Heading {
  int cell;
  Vec2 p, v;
  Transition acc;
};

bool in_cone(const Vec2& e1, const Vec2& e0, const Vec2& v) {
  return cross(e1, v) >= 0 && cross(v, e0) >= 0;
}

int vertex_at(const ChartComplex& c, int cell, const Vec2& x) {
  const auto& v = c.cells[cell].vertices;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (Vec2(v[i]) == x) return static_cast<int>(i);
  return -1;
}

// Straight continuation of direction v through vertex i of a cell, found by
// walking around the vertex in both senses.
std::optional<Heading> through_vertex(const ChartComplex& c, int cell, int i, const Vec2& v) {
  Vec2 V(c.cells[cell].vertices[i]);
  if (c.is_singular_vertex({cell, V.coords()})) return std::nullopt;
  for (int sense : {1, -1}) {
    int cur = cell, idx = i;
    int n = c.num_edges(cur);
    int exit = sense > 0 ? idx : (idx + n - 1) % n;
    Transition acc{AffineMap::identity(2), AffineFn::zero(2)};
    for (int step = 0; step < 32; ++step) {
      if (c.is_boundary(cur, exit)) break;
      Rational param = exit == idx ? Rational(0) : Rational(1);
      Crossing cr = c.cross(cur, exit, param);
      acc = acc.then(cr.transition);
      Vec2 Vn = acc.map.apply(V);
      int j = vertex_at(c, cr.to_cell, Vn);
      if (j < 0) fail(ErrorKind::geometry, "vertex identification broken");
      int m = c.num_edges(cr.to_cell);
      const auto& w = c.cells[cr.to_cell].vertices;
      Vec2 vn = acc.map.apply_linear(v);
      Vec2 e1 = Vec2(w[(j + 1) % m]) - Vn, e0 = Vec2(w[(j + m - 1) % m]) - Vn;
      if (in_cone(e1, e0, vn)) return Heading{cr.to_cell, Vn, vn, acc};
      if (cr.to_cell == cell && j == i) break;
      cur = cr.to_cell;
      idx = j;
      n = m;
      exit = cr.to_edge == j ? (j + m - 1) % m : j;
    }
  }
  return std::nullopt;
}

std::vector<WallTerm> transport_terms(const std::vector<WallTerm>& f, const Transition& t) {
  std::vector<WallTerm> out = f;
  for (auto& w : out) w.exponent = t.apply(Layer::ptilde, w.exponent);
  return out;
}

Vec2 primitive_direction(const Vec2& d) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), d.x.get_den_mpz_t(), d.y.get_den_mpz_t());
  Integer a = Integer(d.x * Rational(l)), b = Integer(d.y * Rational(l));
  Integer g;
  Integer aa = abs(a), bb = abs(b);
  mpz_gcd(g.get_mpz_t(), aa.get_mpz_t(), bb.get_mpz_t());
  return {Rational(a / g), Rational(b / g)};
}

}  // namespace

void Structure::trace(const ChartComplex& c) {
  pieces_.clear();
  if (c.dim != 2 && !rays.empty()) fail(ErrorKind::unsupported, "rays need a two-dimensional complex");
  for (std::size_t ri = 0; ri < rays.size(); ++ri) {
    const Ray& ray = rays[ri];
    int cell = ray.base.cell;
    Vec2 p(ray.base.x);
    Vec2 v(Rational(static_cast<long>(ray.direction[0])), Rational(static_cast<long>(ray.direction[1])));
    auto terms = ray.function;
    Rational remaining = ray.extent;
    bool at_start = true, passed = false;
    for (int guard = 0; guard < 256; ++guard) {
      std::optional<Rational> best;
      int along = -1;
      for (int e = 0; e < c.num_edges(cell); ++e) {
        AffineFn n = c.outward_normal(cell, e);
        Rational nv = n.slope[0] * v.x + n.slope[1] * v.y;
        Rational np = n(p);
        if (nv == 0 && np == 0) along = e;
        if (nv > 0) {
          Rational lam = -np / nv;
          if (!best || lam < *best) best = lam;
        }
      }
      if (!best) fail(ErrorKind::geometry, "ray " + ray.name + " does not leave its cell");
      bool ends = ray.bounded && remaining <= *best;
      Rational lam = ends ? remaining : *best;
      // Rays stop at singular points other than their own base, except when
      // running along the singular point's edge, whose direction the
      // monodromy fixes; there the ray is only split.
      bool pass = false;
      for (int e = 0; e < c.num_edges(cell); ++e) {
        auto sp = c.singular_param(cell, e);
        if (!sp) continue;
        auto [e0, e1] = c.edge_endpoints(cell, e);
        Vec2 s = Vec2(e0) + (Vec2(e1) - Vec2(e0)) * *sp;
        Vec2 w = s - p;
        if (cross(w, v) != 0) continue;
        Rational mu = v.x != 0 ? w.x / v.x : w.y / v.y;
        bool hits = mu > 0 || (mu == 0 && !at_start && !passed);
        if (hits && mu < lam) {
          lam = mu;
          pass = e == along;
          ends = !pass;
        } else if (hits && mu == lam && e != along) {
          ends = true;
        }
      }
      Vec2 q = p + v * lam;
      if (lam > 0) {
        pieces_.push_back({static_cast<int>(ri), cell, p, q, along, terms});
        if (along >= 0 && !c.is_boundary(cell, along)) {
          auto [e0, e1] = c.edge_endpoints(cell, along);
          Rational mid = line_param(Vec2(e0), Vec2(e1), (p + q) * Rational(1, 2));
          Crossing cr = c.cross(cell, along, mid);
          pieces_.push_back({static_cast<int>(ri), cr.to_cell, cr.transition.map.apply(p),
                             cr.transition.map.apply(q), cr.to_edge, transport_terms(terms, cr.transition)});
        }
      }
      at_start = false;
      passed = pass;
      if (ends) break;
      if (ray.bounded) remaining -= lam;
      if (pass) {
        p = q;
        continue;
      }
      auto loc = c.locate(cell, q.coords());
      if (loc.kind == ChartComplex::Location::edge) {
        if (c.is_boundary(cell, loc.index)) break;
        Crossing cr = c.cross(cell, loc.index, loc.param);
        cell = cr.to_cell;
        p = cr.transition.map.apply(q);
        v = cr.transition.map.apply_linear(v);
        terms = transport_terms(terms, cr.transition);
      } else if (loc.kind == ChartComplex::Location::vertex) {
        auto h = through_vertex(c, cell, loc.index, v);
        if (!h) break;
        cell = h->cell;
        p = h->p;
        v = h->v;
        terms = transport_terms(terms, h->acc);
      } else {
        fail(ErrorKind::geometry, "ray " + ray.name + " stopped inside a cell");
      }
    }
  }
}

std::vector<const RayPiece*> Structure::pieces_in(int cell) const {
  std::vector<const RayPiece*> out;
  for (const auto& p : pieces_)
    if (p.cell == cell) out.push_back(&p);
  return out;
}

int Structure::find(const std::string& name) const {
  for (std::size_t i = 0; i < rays.size(); ++i)
    if (rays[i].name == name) return static_cast<int>(i);
  return -1;
}

Structure Structure::without(const std::string& name, const ChartComplex& c) const {
  Structure s;
  for (const auto& r : rays)
    if (r.name != name) s.rays.push_back(r);
  s.trace(c);
  return s;
}

Structure structure_from_json(const nlohmann::json& doc, const ChartComplex& c) {
  Structure s;
  if (!doc.contains("rays")) return s;
  try {
    int idx = 0;
    for (const auto& r : doc.at("rays")) {
      Ray ray;
      ray.name = r.value("name", "ray" + std::to_string(idx));
      ++idx;
      ray.base = json_point(r.at("base"), c.dim);
      if (ray.base.cell < 0 || ray.base.cell >= static_cast<int>(c.cells.size()) ||
          c.locate(ray.base.cell, ray.base.x).kind == ChartComplex::Location::outside)
        fail(ErrorKind::validation, "ray " + ray.name + " base outside its cell");
      for (const auto& x : r.at("direction")) ray.direction.push_back(json_int(x));
      if (ray.direction.size() != 2) fail(ErrorKind::validation, "ray direction must be planar");
      if (std::gcd(ray.direction[0], ray.direction[1]) != 1)
        fail(ErrorKind::validation, "ray " + ray.name + " direction is not primitive");
      ray.bounded = r.value("bounded", false);
      if (ray.bounded) ray.extent = json_rational(r.at("extent"));
      for (const auto& t : r.at("function")) {
        Rational coeff = json_rational(t.at("coeff"));
        std::vector<std::int64_t> e;
        for (const auto& x : t.at("exponent")) e.push_back(json_int(x));
        if (e.size() != 3) fail(ErrorKind::validation, "wall exponent must be [u1, u2, torder]");
        if (e[0] == 0 && e[1] == 0) {
          if (e[2] != 0 || coeff != 1) fail(ErrorKind::validation, "wall function must have constant term 1");
          continue;
        }
        if (coeff == 0) continue;
        // u = -k * direction with k >= 1.
        std::int64_t k = 0;
        if (ray.direction[0] != 0) k = -e[0] / ray.direction[0];
        else k = -e[1] / ray.direction[1];
        if (k <= 0 || e[0] != -k * ray.direction[0] || e[1] != -k * ray.direction[1])
          fail(ErrorKind::validation, "wall monomial of " + ray.name + " is not directed against the ray");
        Rational h = Rational(static_cast<long>(e[2]));
        if (c.has_phi) h += c.phi[ray.base.cell].pair({e[0], e[1]}, 0);
        if (!is_integer(h)) fail(ErrorKind::validation, "wall exponent height not integral");
        ray.function.push_back({coeff, {e[0], e[1], to_int64(h), 0}, static_cast<int>(k)});
      }
      s.rays.push_back(ray);
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::parse, std::string("rays: ") + e.what());
  }
  s.trace(c);
  return s;
}

AffineFn piece_normal(const RayPiece& piece, const Vec2& side) {
  Vec2 d = primitive_direction(piece.b - piece.a);
  AffineFn n{{-d.y, d.x}, d.y * piece.a.x - d.x * piece.a.y};
  Rational at = n(side);
  if (at == 0) fail(ErrorKind::genericity, "crossing side lies on the ray");
  return at > 0 ? n : n.scaled(-1);
}

std::int64_t crossing_exponent(const RayPiece& piece, const Exponent& q, const Vec2& side) {
  AffineFn n = piece_normal(piece, side);
  Rational v = n.pair({q[0], q[1]}, q[3]);
  if (!is_integer(v)) fail(ErrorKind::domain, "ray is not an integral affine line");
  return to_int64(v);
}

namespace {

TruncatedSeries wall_series(const RayPiece& piece, const AlgebraPtr& algebra) {
  TruncatedSeries f = TruncatedSeries::one(algebra);
  for (const auto& w : piece.function) f.add_term(w.exponent, w.coeff, w.length);
  return f;
}

TruncatedSeries wall_factor(const std::vector<const RayPiece*>& pieces, const Exponent& q, const Vec2& side,
                            const AlgebraPtr& algebra) {
  TruncatedSeries prod = TruncatedSeries::one(algebra);
  std::optional<std::int64_t> common;
  for (const auto* p : pieces) {
    std::int64_t n = crossing_exponent(*p, q, side);
    if (common && *common != n) fail(ErrorKind::genericity, "rays through the point have different normals");
    common = n;
    if (n != 0) prod = prod * series_pow(wall_series(*p, algebra), n);
  }
  return prod;
}

}  // namespace

std::vector<BendTerm> bend_expansion(const std::vector<const RayPiece*>& pieces, const Exponent& q,
                                     const Vec2& side, const AlgebraPtr& algebra) {
  std::vector<BendTerm> out;
  TruncatedSeries f = wall_factor(pieces, q, side, algebra);
  for (const auto& [e, t] : f.terms()) out.push_back({t.coeff, e, t.length});
  return out;
}

TruncatedSeries wall_cross_transform(const TruncatedSeries& s, const std::vector<const RayPiece*>& pieces,
                                     const Vec2& side) {
  TruncatedSeries out = TruncatedSeries::zero(s.algebra_ptr());
  for (const auto& [e, t] : s.terms()) {
    TruncatedSeries m = TruncatedSeries::monomial(s.algebra_ptr(), e, t.coeff, t.length);
    out = out + m * wall_factor(pieces, e, side, s.algebra_ptr());
  }
  return out;
}

}  // namespace jag
