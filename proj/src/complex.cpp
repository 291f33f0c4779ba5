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

#include "jagged/complex.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "jagged/error.hpp"

namespace jag {

std::string to_string(const Point& p) {
  return "c" + std::to_string(p.cell) + to_string(p.x);
}

int layer_rank(Layer layer, int dim) {
  switch (layer) {
    case Layer::lambda: return dim;
    case Layer::aff_dual: return dim + 1;
    case Layer::p: return dim + 1;
    case Layer::ptilde: return dim + 2;
  }
  return dim;
}

const char* to_string(Layer layer) {
  switch (layer) {
    case Layer::lambda: return "Lambda";
    case Layer::aff_dual: return "Aff*";
    case Layer::p: return "P";
    case Layer::ptilde: return "P~";
  }
  return "?";
}

namespace {

std::int64_t integral(const Rational& q, const char* what) {
  if (!is_integer(q)) fail(ErrorKind::domain, std::string(what) + " is not integral: " + to_string(q));
  return to_int64(q);
}

}  // namespace

Exponent Transition::apply(Layer layer, const Exponent& e) const {
  int n = map.dim;
  if (static_cast<int>(e.size()) != layer_rank(layer, n))
    fail(ErrorKind::config, "germ exponent has the wrong rank for its layer");
  std::vector<std::int64_t> u(e.begin(), e.begin() + n);
  auto mu = map.apply_linear(u);
  Exponent r = e;
  std::copy(mu.begin(), mu.end(), r.begin());
  switch (layer) {
    case Layer::lambda: break;
    case Layer::aff_dual: {
      std::int64_t d = e[n];
      for (int i = 0; i < n; ++i) r[i] += d * map.t[i];
      break;
    }
    case Layer::p:
      r[n] += integral(twist.pair(u, 0), "twist");
      break;
    case Layer::ptilde: {
      std::int64_t d = e[n + 1];
      for (int i = 0; i < n; ++i) r[i] += d * map.t[i];
      r[n] += integral(twist.pair(u, d), "twist");
      break;
    }
  }
  return r;
}

Transition Transition::inverse() const {
  Transition r;
  r.map = map.inverse();
  r.twist = r.map.pullback(twist).scaled(-1);
  return r;
}

Transition Transition::then(const Transition& next) const {
  Transition r;
  r.map = map.then(next.map);
  r.twist = twist + map.pullback(next.twist);
  return r;
}

bool ValidationReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckLine& c) { return c.ok; });
}

void ValidationReport::add(std::string name, bool ok, std::string detail) {
  checks.push_back({std::move(name), ok, std::move(detail)});
}

int ChartComplex::num_edges(int cell) const {
  return static_cast<int>(cells.at(cell).vertices.size());
}

std::pair<Coords, Coords> ChartComplex::edge_endpoints(int cell, int edge) const {
  const auto& v = cells.at(cell).vertices;
  if (dim == 1) return {v.at(edge), v.at(edge)};
  return {v.at(edge), v.at((edge + 1) % v.size())};
}

AffineFn ChartComplex::outward_normal(int cell, int edge) const {
  const auto& v = cells.at(cell).vertices;
  if (dim == 1) {
    if (edge == 0) return {{Rational(-1)}, v[0][0]};
    return {{Rational(1)}, -v[1][0]};
  }
  auto [p, q] = edge_endpoints(cell, edge);
  Rational ex = q[0] - p[0], ey = q[1] - p[1];
  Integer g;
  Integer ax = abs(ex.get_num()), ay = abs(ey.get_num());
  mpz_gcd(g.get_mpz_t(), ax.get_mpz_t(), ay.get_mpz_t());
  ex /= Rational(g);
  ey /= Rational(g);
  return {{ey, -ex}, -(ey * p[0] - ex * p[1])};
}

std::pair<int, bool> ChartComplex::gluing_of(int cell, int edge) const {
  return sides_.at(cell).at(edge);
}

bool ChartComplex::is_boundary(int cell, int edge) const { return gluing_of(cell, edge).first < 0; }

std::optional<Rational> ChartComplex::singular_param(int cell, int edge) const {
  auto [gi, is_a] = gluing_of(cell, edge);
  if (gi < 0 || !gluings[gi].split) return std::nullopt;
  return is_a ? *gluings[gi].split : 1 - *gluings[gi].split;
}

Crossing ChartComplex::cross(int cell, int edge, const Rational& s) const {
  auto [gi, is_a] = gluing_of(cell, edge);
  if (gi < 0) fail(ErrorKind::geometry, "cannot cross a boundary edge");
  const Gluing& g = gluings[gi];
  auto sp = singular_param(cell, edge);
  int branch = 0;
  if (sp) {
    if (s == *sp) fail(ErrorKind::geometry, "path meets a singular point");
    branch = s > *sp ? 1 : 0;
  }
  Crossing c;
  c.to_cell = is_a ? g.b.cell : g.a.cell;
  c.to_edge = is_a ? g.b.edge : g.a.edge;
  c.transition = is_a ? g.forward.at(branch) : g.backward.at(branch);
  return c;
}

ChartComplex::Location ChartComplex::locate(int cell, const Coords& x) const {
  Location loc;
  std::vector<int> zero;
  for (int e = 0; e < num_edges(cell); ++e) {
    Rational val = outward_normal(cell, e)(x);
    if (val > 0) return loc;
    if (val == 0) zero.push_back(e);
  }
  if (zero.empty()) {
    loc.kind = Location::interior;
    return loc;
  }
  if (dim == 1) {
    loc.kind = Location::vertex;
    loc.index = zero[0];
    return loc;
  }
  if (zero.size() >= 2) {
    loc.kind = Location::vertex;
    int n = num_edges(cell);
    // Edges e and e+1 meet at vertex e+1.
    int a = zero[0], b = zero[1];
    loc.index = (b == a + 1) ? b : a;
    if (a == 0 && b == n - 1) loc.index = 0;
    return loc;
  }
  loc.kind = Location::edge;
  loc.index = zero[0];
  auto [p, q] = edge_endpoints(cell, loc.index);
  loc.param = line_param(Vec2(p), Vec2(q), Vec2(x));
  return loc;
}

std::vector<Point> ChartComplex::representatives(const Point& p) const {
  auto loc = locate(p.cell, p.x);
  if (loc.kind == Location::outside)
    fail(ErrorKind::domain, "point " + to_string(p) + " is not in its cell");
  if (loc.kind == Location::interior) return {p};
  if (loc.kind == Location::vertex) return class_members_.at(vertex_class_.at(p.cell).at(loc.index));
  std::vector<Point> r{p};
  if (!is_boundary(p.cell, loc.index)) {
    // Branches agree along the edge, so any of them identifies the point.
    auto [gi, is_a] = gluing_of(p.cell, loc.index);
    const Gluing& g = gluings[gi];
    const Transition& t = is_a ? g.forward[0] : g.backward[0];
    r.push_back({is_a ? g.b.cell : g.a.cell, t.map.apply(p.x)});
  }
  return r;
}

Point ChartComplex::canonical(const Point& p) const {
  auto reps = representatives(p);
  return *std::min_element(reps.begin(), reps.end());
}

Rational ChartComplex::torder(int cell, const Exponent& e) const {
  int n = dim;
  std::vector<std::int64_t> u(e.begin(), e.begin() + n);
  Rational s(static_cast<long>(e[n]));
  if (!has_phi) return s;
  return s - phi.at(cell).pair(u, e[n + 1]);
}

std::vector<Rational> ChartComplex::torder_weights(int cell) const {
  std::vector<Rational> w(dim + 2, Rational(0));
  w[dim] = 1;
  if (has_phi) {
    for (int i = 0; i < dim; ++i) w[i] = -phi.at(cell).slope[i];
    w[dim + 1] = -phi.at(cell).constant;
  }
  return w;
}

std::optional<Point> ChartComplex::label(const std::string& n) const {
  auto it = labels.find(n);
  if (it == labels.end()) return std::nullopt;
  return it->second;
}

std::string ChartComplex::point_name(const Point& p) const {
  Point cp = canonical(p);
  for (const auto& n : label_order)
    if (canonical(labels.at(n)) == cp) return n;
  return to_string(cp);
}

bool ChartComplex::is_singular_vertex(const Point& p) const {
  Point cp = canonical(p);
  for (const auto& s : singular_vertices)
    if (canonical(s) == cp) return true;
  return false;
}

namespace {

bool integral_coords(const Coords& x) {
  return std::all_of(x.begin(), x.end(), [](const Rational& q) { return is_integer(q); });
}

// Multiple k with f == k * n, when it exists.
std::optional<Rational> multiple_of(const AffineFn& f, const AffineFn& n) {
  std::optional<Rational> k;
  for (std::size_t i = 0; i < n.slope.size(); ++i) {
    if (n.slope[i] != 0) {
      k = f.slope[i] / n.slope[i];
      break;
    }
  }
  if (!k) return std::nullopt;
  if (!(f == n.scaled(*k))) return std::nullopt;
  return k;
}

Coords centroid(const std::vector<Coords>& v) {
  Coords c(v[0].size(), Rational(0));
  for (const auto& p : v)
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += p[i];
  for (auto& x : c) x /= Rational(static_cast<long>(v.size()));
  return c;
}

}  // namespace

void ChartComplex::finalize(ValidationReport* report) {
  ValidationReport local;
  ValidationReport& rep = report ? *report : local;
  auto check = [&](const std::string& name, bool ok, const std::string& detail = {}) {
    rep.add(name, ok, detail);
    if (!ok && !report) fail(ErrorKind::validation, name + (detail.empty() ? "" : ": " + detail));
    return ok;
  };

  if (!check("dimension", dim == 1 || dim == 2, std::to_string(dim))) return;
  if (!check("cells present", !cells.empty())) return;

  bool cells_ok = true;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const auto& v = cells[c].vertices;
    std::string where = "cell " + std::to_string(c);
    bool shape = true;
    for (const auto& p : v)
      if (static_cast<int>(p.size()) != dim || !integral_coords(p)) shape = false;
    if (dim == 1) {
      shape = shape && v.size() == 2 && v[0][0] < v[1][0];
    } else {
      shape = shape && v.size() >= 3;
      for (std::size_t i = 0; shape && i < v.size(); ++i) {
        Vec2 a(v[i]), b(v[(i + 1) % v.size()]), d(v[(i + 2) % v.size()]);
        if (jag::cross(b - a, d - b) <= 0) shape = false;
      }
    }
    cells_ok &= check(where + " is a convex lattice polygon", shape);
  }
  if (!cells_ok) return;

  sides_.assign(cells.size(), {});
  for (std::size_t c = 0; c < cells.size(); ++c) sides_[c].assign(num_edges(c), {-1, false});

  bool glue_ok = true;
  for (std::size_t gi = 0; gi < gluings.size(); ++gi) {
    Gluing& g = gluings[gi];
    std::string where = "gluing " + std::to_string(gi);
    auto valid_ref = [&](const EdgeRef& r) {
      return r.cell >= 0 && r.cell < static_cast<int>(cells.size()) && r.edge >= 0 &&
             r.edge < num_edges(r.cell);
    };
    if (!check(where + " references existing edges", valid_ref(g.a) && valid_ref(g.b))) {
      glue_ok = false;
      continue;
    }
    bool fresh = sides_[g.a.cell][g.a.edge].first < 0 && sides_[g.b.cell][g.b.edge].first < 0 &&
                 !(g.a == g.b);
    glue_ok &= check(where + " glues each edge once", fresh);
    sides_[g.a.cell][g.a.edge] = {static_cast<int>(gi), true};
    sides_[g.b.cell][g.b.edge] = {static_cast<int>(gi), false};

    std::size_t nb = g.split ? 2 : 1;
    glue_ok &= check(where + " has one branch per side of its singular points",
                     g.forward.size() == nb && g.backward.size() == nb);
    if (g.split) glue_ok &= check(where + " singular point interior to the edge", *g.split > 0 && *g.split < 1);
    if (g.forward.size() != nb || g.backward.size() != nb) continue;

    bool inverse = true, unimodular = true;
    for (std::size_t i = 0; i < nb; ++i) {
      const auto& f = g.forward[i];
      const auto& b = g.backward[nb - 1 - i];
      if (f.map.det() != 1 && f.map.det() != -1) unimodular = false;
      if (!(f.map.then(b.map) == AffineMap::identity(dim))) inverse = false;
    }
    glue_ok &= check(where + " integral unimodular", unimodular);
    glue_ok &= check(where + " gluings mutually inverse", inverse, inverse ? "" : "gluings not mutually inverse");
    if (!inverse || !unimodular) continue;

    auto [pa, qa] = edge_endpoints(g.a.cell, g.a.edge);
    auto [pb, qb] = edge_endpoints(g.b.cell, g.b.edge);
    bool ends = true;
    for (const auto& f : g.forward) {
      if (dim == 1) {
        ends &= f.map.apply(pa) == pb;
      } else {
        ends &= f.map.apply(pa) == qb && f.map.apply(qa) == pb;
      }
    }
    glue_ok &= check(where + " maps edge onto edge", ends);
    auto ca = g.forward[0].map.apply(centroid(cells[g.a.cell].vertices));
    glue_ok &= check(where + " places cells on opposite sides", outward_normal(g.b.cell, g.b.edge)(ca) > 0);
  }
  if (!glue_ok) return;

  // Vertex classes by union-find over edge identifications.
  std::vector<int> offset(cells.size() + 1, 0);
  for (std::size_t c = 0; c < cells.size(); ++c) offset[c + 1] = offset[c] + num_edges(c);
  std::vector<int> parent(offset.back());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int i) { return parent[i] == i ? i : parent[i] = find(parent[i]); };
  auto vertex_index = [&](int cell, const Coords& x) {
    const auto& v = cells[cell].vertices;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] == x) return static_cast<int>(i);
    return -1;
  };
  for (const auto& g : gluings) {
    const auto& va = cells[g.a.cell].vertices;
    std::vector<int> ends = dim == 1 ? std::vector<int>{g.a.edge}
                                     : std::vector<int>{g.a.edge, (g.a.edge + 1) % static_cast<int>(va.size())};
    for (int k : ends) {
      int j = vertex_index(g.b.cell, g.forward[0].map.apply(va[k]));
      if (j >= 0) parent[find(offset[g.a.cell] + k)] = find(offset[g.b.cell] + j);
    }
  }
  vertex_class_.assign(cells.size(), {});
  std::map<int, int> class_id;
  class_members_.clear();
  for (std::size_t c = 0; c < cells.size(); ++c) {
    for (int k = 0; k < num_edges(c); ++k) {
      int root = find(offset[c] + k);
      auto [it, inserted] = class_id.try_emplace(root, static_cast<int>(class_members_.size()));
      if (inserted) class_members_.emplace_back();
      vertex_class_[c].push_back(it->second);
      class_members_[it->second].push_back({static_cast<int>(c), cells[c].vertices[k]});
    }
  }
  for (auto& m : class_members_) std::sort(m.begin(), m.end());

  if (has_phi) {
    bool phi_ok = check("phi given on every cell", phi.size() == cells.size());
    for (std::size_t c = 0; phi_ok && c < cells.size(); ++c)
      phi_ok &= check("phi slope integral on cell " + std::to_string(c),
                      integral_coords(phi[c].slope) && static_cast<int>(phi[c].slope.size()) == dim);
    if (!phi_ok) return;
    for (std::size_t gi = 0; gi < gluings.size(); ++gi) {
      Gluing& g = gluings[gi];
      std::string where = "gluing " + std::to_string(gi);
      AffineFn n = outward_normal(g.a.cell, g.a.edge);
      auto diff = [&](std::size_t i) {
        return g.forward[i].map.pullback(phi[g.b.cell]) - phi[g.a.cell];
      };
      AffineFn base = diff(0);
      if (g.explicit_twist) base = base - g.forward[0].twist;
      auto k = multiple_of(base, n);
      if (!check(where + " phi single-valued near the edge", k.has_value())) continue;
      g.kink = *k;
      check(where + " phi strictly convex", *k > 0, "kink " + to_string(*k));
      // The kink is kept across every branch; whatever remains is the twist.
      if (!g.explicit_twist)
        for (std::size_t i = 0; i < g.forward.size(); ++i) g.forward[i].twist = diff(i) - n.scaled(*k);
    }
  } else {
    for (auto& g : gluings) g.kink = 0;
  }
  for (auto& g : gluings) {
    std::size_t nb = g.forward.size();
    for (std::size_t i = 0; i < nb; ++i) g.backward[nb - 1 - i] = g.forward[i].inverse();
  }

  for (const auto& name : label_order) {
    const Point& p = labels.at(name);
    bool ok = p.cell >= 0 && p.cell < static_cast<int>(cells.size()) &&
              static_cast<int>(p.x.size()) == dim && locate(p.cell, p.x).kind != Location::outside;
    check("label " + name + " inside its cell", ok);
  }
}

}  // namespace jag
