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

#include "jagged/tmt.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <set>

#include "jagged/error.hpp"

namespace jag {

// ---------------------------------------------------------------- ribbon trees

namespace {

struct Sub {
  int lo, hi;
  std::vector<Sub> children;
};

std::vector<Sub> subtrees(int lo, int hi) {
  if (hi - lo == 1) return {Sub{lo, hi, {}}};
  std::vector<Sub> out;
  // Split [lo, hi) into at least two consecutive blocks.
  std::function<void(int, std::vector<std::pair<int, int>>&)> split = [&](int from,
                                                                         std::vector<std::pair<int, int>>& blocks) {
    if (from == hi) {
      if (blocks.size() < 2) return;
      std::vector<std::vector<Sub>> options;
      for (auto [a, b] : blocks) options.push_back(subtrees(a, b));
      std::vector<Sub> pick;
      std::function<void(std::size_t)> choose = [&](std::size_t i) {
        if (i == options.size()) {
          out.push_back(Sub{lo, hi, pick});
          return;
        }
        for (const auto& s : options[i]) {
          pick.push_back(s);
          choose(i + 1);
          pick.pop_back();
        }
      };
      choose(0);
      return;
    }
    for (int to = from + 1; to <= hi; ++to) {
      blocks.emplace_back(from, to);
      split(to, blocks);
      blocks.pop_back();
    }
  };
  std::vector<std::pair<int, int>> blocks;
  split(lo, blocks);
  return out;
}

void flatten(const Sub& s, int parent, RibbonTree& t) {
  int me = static_cast<int>(t.nodes.size());
  t.nodes.push_back({s.lo, s.hi, parent, {}});
  if (parent >= 0) t.nodes[parent].children.push_back(me);
  for (const auto& c : s.children) flatten(c, me, t);
}

std::string node_text(const RibbonTree& t, int n) {
  const auto& node = t.nodes[n];
  if (node.children.empty()) return std::to_string(node.lo) + std::to_string(node.hi);
  std::string s = "(";
  for (std::size_t i = 0; i < node.children.size(); ++i) s += (i ? "," : "") + node_text(t, node.children[i]);
  return s + ")";
}

}  // namespace

std::string RibbonTree::to_string() const { return node_text(*this, 0); }

std::vector<RibbonTree> enumerate_ribbon_trees(int d) {
  if (d < 2 || d > 6) fail(ErrorKind::unsupported, "ribbon trees are enumerated for 2 <= d <= 6");
  std::vector<RibbonTree> out;
  for (const auto& s : subtrees(0, d)) {
    RibbonTree t;
    t.d = d;
    flatten(s, -1, t);
    out.push_back(std::move(t));
  }
  return out;
}

std::string edge_name(int i, int j) { return "e_{" + std::to_string(i) + "," + std::to_string(j) + "}"; }

std::vector<std::string> TropicalMorseTree::contracted_edges() const {
  std::vector<std::string> out;
  for (const auto& e : edges)
    if (e.contracted()) out.push_back(edge_name(e.i, e.j));
  return out;
}

// ------------------------------------------------------------ exact polyhedra

namespace {

// a.x + b >= 0, or > 0 when strict.
struct Ineq {
  std::vector<Rational> a;
  Rational b;
  bool strict = false;
};

struct Bounds {
  bool feasible = true;
  std::optional<Rational> lo, hi;
  bool lo_strict = false, hi_strict = false;
};

// Projection of the polyhedron onto coordinate `keep` by Fourier-Motzkin.
Bounds project(std::vector<Ineq> rows, std::size_t nvars, std::size_t keep) {
  for (std::size_t v = 0; v < nvars; ++v) {
    if (v == keep) continue;
    std::vector<Ineq> pos, neg, rest;
    for (auto& r : rows) {
      int s = sign(r.a[v]);
      (s > 0 ? pos : s < 0 ? neg : rest).push_back(std::move(r));
    }
    for (const auto& p : pos)
      for (const auto& n : neg) {
        Rational wp = -n.a[v], wn = p.a[v];
        Ineq c;
        c.a.resize(nvars);
        for (std::size_t i = 0; i < nvars; ++i) c.a[i] = wp * p.a[i] + wn * n.a[i];
        c.b = wp * p.b + wn * n.b;
        c.strict = p.strict || n.strict;
        rest.push_back(std::move(c));
      }
    rows = std::move(rest);
  }
  Bounds b;
  for (const auto& r : rows) {
    const Rational& a = r.a[keep];
    if (a == 0) {
      if (r.b < 0 || (r.strict && r.b == 0)) b.feasible = false;
      continue;
    }
    Rational x = -r.b / a;
    if (a > 0) {
      if (!b.lo || x > *b.lo || (x == *b.lo && r.strict)) b.lo = x, b.lo_strict = r.strict;
    } else {
      if (!b.hi || x < *b.hi || (x == *b.hi && r.strict)) b.hi = x, b.hi_strict = r.strict;
    }
  }
  if (b.lo && b.hi && (*b.lo > *b.hi || (*b.lo == *b.hi && (b.lo_strict || b.hi_strict)))) b.feasible = false;
  return b;
}

enum class Solve { empty, point, family };

Solve solve_polyhedron(const std::vector<Ineq>& rows, std::size_t nvars, std::vector<Rational>* point) {
  point->assign(nvars, Rational(0));
  if (nvars == 0) {
    for (const auto& r : rows)
      if (r.b < 0 || (r.strict && r.b == 0)) return Solve::empty;
    return Solve::point;
  }
  for (std::size_t v = 0; v < nvars; ++v) {
    Bounds b = project(rows, nvars, v);
    if (!b.feasible) return Solve::empty;
    if (!b.lo || !b.hi || *b.lo != *b.hi) return Solve::family;
    (*point)[v] = *b.lo;
  }
  return Solve::point;
}

}  // namespace

// ------------------------------------------------------- trees on a 1D torus

namespace {

struct Edge {
  std::int64_t level;
  Exponent m;    // (u, s, l)
  Rational f;    // focus u / l
  bool forced;   // contraction forced by the sign of the level
};

Rational q64(std::int64_t v) { return Rational(static_cast<long>(v)); }

class TorusTrees {
 public:
  TorusTrees(const MumfordData& data, const RibbonTree& tree, const std::vector<std::int64_t>& levels,
             const std::vector<Coords>& points, std::int64_t k)
      : data_(data), tree_(tree), levels_(levels), k_(k) {
    for (const auto& p : points) base_.push_back(mumford_reduce(data, p)[0]);
    period_ = q64(std::abs(data.gamma[0][0]));
    for (std::size_t n = 0; n < tree.nodes.size(); ++n)
      if (tree.is_leaf(static_cast<int>(n))) leaf_node_[tree.nodes[n].lo] = static_cast<int>(n);
  }

  std::vector<TropicalMorseTree> run() {
    std::vector<TropicalMorseTree> out;
    int d = tree_.d;
    int quiet = 0;
    for (std::int64_t r = 0; r < 3 || quiet < 2; ++r) {
      if (r > 200) fail(ErrorKind::check_failed, "tropical Morse tree enumeration does not stabilize");
      std::size_t before = out.size();
      std::vector<std::int64_t> n(d, 0);
      std::function<void(int, bool)> walk = [&](int i, bool on_shell) {
        if (i == d) {
          if (on_shell || r == 0) solve(n, out);
          return;
        }
        for (std::int64_t v = -r; v <= r; ++v) {
          n[i] = v;
          walk(i + 1, on_shell || std::abs(v) == r);
        }
      };
      // Leaf 0 stays in the fundamental domain; the rest move by Gamma.
      walk(1, false);
      quiet = out.size() == before ? quiet + 1 : 0;
    }
    return out;
  }

 private:
  void solve(const std::vector<std::int64_t>& n, std::vector<TropicalMorseTree>& out) {
    const auto& nodes = tree_.nodes;
    std::size_t count = nodes.size();
    std::vector<Edge> edges(count);
    std::vector<Rational> leaf_pos(count);
    // Monomials bottom-up (children follow parents in node order).
    for (std::size_t i = count; i-- > 0;) {
      const auto& node = nodes[i];
      Edge& e = edges[i];
      e.level = levels_[node.hi] - levels_[node.lo];
      if (node.children.empty()) {
        Rational y = base_[node.lo] + q64(n[node.lo]) * period_;
        leaf_pos[i] = y;
        Rational l = q64(e.level);
        e.m = {to_int64(l * y), to_int64(l * mumford_phi(data_, {y})), e.level};
        e.forced = e.level < 0;
      } else {
        e.m = Exponent(3, 0);
        for (int c : node.children) e.m = e.m + edges[c].m;
        e.forced = false;
      }
      e.f = q64(e.m[0]) / q64(e.level);
    }
    edges[0].forced = edges[0].level > 0;
    Rational out_pt = edges[0].f;
    Rational ord_q = q64(edges[0].m[1]) - q64(edges[0].level) * mumford_phi(data_, {out_pt});
    if (ord_q > q64(k_)) return;

    // Slots: nodes 0..count-1, output = count. Edge i runs from slot i to
    // its parent (or the output for the root).
    std::size_t out_slot = count;
    auto target = [&](std::size_t i) { return nodes[i].parent < 0 ? out_slot : static_cast<std::size_t>(nodes[i].parent); };
    std::vector<int> sigma(count, -1);
    std::function<void(std::size_t)> choose = [&](std::size_t i) {
      if (i == count) {
        evaluate(edges, leaf_pos, out_pt, ord_q, sigma, target, out);
        return;
      }
      for (int s : {-1, 0, 1}) {
        if (edges[i].forced && s != 0) continue;
        sigma[i] = s;
        choose(i + 1);
      }
    };
    choose(0);
  }

  template <class Target>
  void evaluate(const std::vector<Edge>& edges, const std::vector<Rational>& leaf_pos, const Rational& out_pt,
                const Rational& ord, const std::vector<int>& sigma, Target target,
                std::vector<TropicalMorseTree>& out) {
    const auto& nodes = tree_.nodes;
    std::size_t count = nodes.size(), slots = count + 1, out_slot = count;
    std::vector<std::size_t> parent(slots);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
      return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    for (std::size_t i = 0; i < count; ++i)
      if (sigma[i] == 0) parent[find(i)] = find(target(i));
    // Fixed values per class.
    std::map<std::size_t, Rational> fixed;
    auto pin = [&](std::size_t slot, const Rational& v) {
      auto [it, fresh] = fixed.emplace(find(slot), v);
      return fresh || it->second == v;
    };
    for (std::size_t i = 0; i < count; ++i)
      if (tree_.is_leaf(static_cast<int>(i)) && !pin(i, leaf_pos[i])) return;
    if (!pin(out_slot, out_pt)) return;
    std::map<std::size_t, std::size_t> var;
    for (std::size_t s = 0; s < slots; ++s)
      if (!fixed.count(find(s)) && !var.count(find(s))) var.emplace(find(s), var.size());
    std::size_t nv = var.size();
    // Affine expression of a slot position.
    auto expr = [&](std::size_t slot) {
      Ineq e;
      e.a.assign(nv, Rational(0));
      auto f = fixed.find(find(slot));
      if (f != fixed.end()) e.b = f->second;
      else e.a[var.at(find(slot))] = 1;
      return e;
    };
    auto diff = [&](Ineq x, const Ineq& y, bool strict) {
      for (std::size_t i = 0; i < nv; ++i) x.a[i] -= y.a[i];
      x.b -= y.b;
      x.strict = strict;
      return x;
    };
    auto constant = [&](const Rational& c) {
      Ineq e;
      e.a.assign(nv, Rational(0));
      e.b = c;
      return e;
    };
    std::vector<Ineq> rows;
    for (std::size_t i = 0; i < count; ++i) {
      if (sigma[i] == 0) continue;
      Ineq s = expr(i), t = expr(target(i));
      const Edge& e = edges[i];
      Ineq f = constant(e.f);
      if (sigma[i] > 0) {
        rows.push_back(diff(t, s, true));
        if (e.level > 0) rows.push_back(diff(s, f, false));  // moving right, away from f
        else rows.push_back(diff(f, t, false));              // moving right, toward f
      } else {
        rows.push_back(diff(s, t, true));
        if (e.level > 0) rows.push_back(diff(f, s, false));
        else rows.push_back(diff(t, f, false));
      }
    }
    std::vector<Rational> pt;
    Solve r = solve_polyhedron(rows, nv, &pt);
    if (r == Solve::empty) return;
    if (r == Solve::family)
      fail(ErrorKind::degenerate, "tropical Morse trees of type " + tree_.to_string() +
                                      " form a family of positive dimension");
    if (tree_.d >= 3)
      for (std::size_t i = 0; i < count; ++i)
        if (sigma[i] == 0 && !edges[i].forced)
          fail(ErrorKind::degenerate, "tropical Morse tree of type " + tree_.to_string() + " contracts " +
                                          edge_name(nodes[i].lo, nodes[i].hi) + "; the inputs are not in general position");
    auto position = [&](std::size_t slot) {
      auto f = fixed.find(find(slot));
      return f != fixed.end() ? f->second : pt[var.at(find(slot))];
    };
    TropicalMorseTree t;
    t.tree = tree_;
    for (std::size_t i = 0; i < count; ++i)
      t.edges.push_back({nodes[i].lo, nodes[i].hi, edges[i].level, {position(i)}, {position(target(i))}, edges[i].m});
    t.output = mumford_reduce(data_, {out_pt});
    t.ord = to_int64(ord);
    out.push_back(std::move(t));
  }

  const MumfordData& data_;
  const RibbonTree& tree_;
  const std::vector<std::int64_t>& levels_;
  std::int64_t k_;
  std::vector<Rational> base_;
  Rational period_;
  std::map<int, int> leaf_node_;
};

void check_inputs(const MumfordData& data, const std::vector<std::int64_t>& levels,
                  const std::vector<Coords>& points) {
  if (data.rank != 1) fail(ErrorKind::unsupported, "tropical Morse trees are traced on one-dimensional tori");
  if (levels.size() < 3 || points.size() + 1 != levels.size())
    fail(ErrorKind::domain, "need d + 1 levels and d input points with d >= 2");
  std::set<std::int64_t> seen(levels.begin(), levels.end());
  if (seen.size() != levels.size()) fail(ErrorKind::domain, "levels must be distinct");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != 1) fail(ErrorKind::domain, "input points are one-dimensional");
    Rational scaled = points[i][0] * q64(std::abs(levels[i + 1] - levels[i]));
    if (!is_integer(scaled))
      fail(ErrorKind::domain, "p_{" + std::to_string(i) + "," + std::to_string(i + 1) + "} is not a point of level " +
                                  std::to_string(levels[i + 1] - levels[i]));
  }
}

}  // namespace

std::vector<TropicalMorseTree> enumerate_tmt(const MumfordData& data, const RibbonTree& tree,
                                             const std::vector<std::int64_t>& levels,
                                             const std::vector<Coords>& points, std::int64_t k) {
  check_inputs(data, levels, points);
  if (tree.d + 1 != static_cast<int>(levels.size())) fail(ErrorKind::domain, "tree and levels disagree on d");
  return TorusTrees(data, tree, levels, points, k).run();
}

MuResult mu_torus(const MumfordData& data, const std::vector<std::int64_t>& levels,
                  const std::vector<Coords>& points, std::int64_t k) {
  check_inputs(data, levels, points);
  MuResult r;
  r.level = levels.back() - levels.front();
  for (const auto& tree : enumerate_ribbon_trees(static_cast<int>(points.size())))
    for (auto& t : enumerate_tmt(data, tree, levels, points, k)) {
      auto& c = r.coeffs[t.output];
      c = c + Poly::monomial(t.coeff, static_cast<int>(t.ord));
      r.trees.push_back(std::move(t));
    }
  for (auto it = r.coeffs.begin(); it != r.coeffs.end();)
    it = it->second.is_zero() ? r.coeffs.erase(it) : std::next(it);
  return r;
}

// ------------------------------------------------- mu_2 on general structures

namespace {

Poly series_inverse(const Poly& a, int k) {
  if (a.coeff(0) == 0) fail(ErrorKind::degenerate, "pivot is not a unit");
  Poly inv(1 / a.coeff(0));
  // Newton: inv <- inv (2 - a inv)
  for (int prec = 1; prec <= k; prec *= 2) inv = (inv * (Poly(Rational(2)) - (a * inv).truncated(k))).truncated(k);
  return inv.truncated(k);
}

// Solves A x = b over Q[t]/(t^{k+1}).
std::vector<Poly> solve_series(std::vector<std::vector<Poly>> a, std::vector<Poly> b, int k) {
  std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col].coeff(0) == 0) ++piv;
    if (piv == n) fail(ErrorKind::degenerate, "output points cannot be separated near the perturbed points");
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    Poly inv = series_inverse(a[col][col], k);
    for (auto& v : a[col]) v = (v * inv).truncated(k);
    b[col] = (b[col] * inv).truncated(k);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col].is_zero()) continue;
      Poly f = a[r][col];
      for (std::size_t j = 0; j < n; ++j) a[r][j] = (a[r][j] - f * a[col][j]).truncated(k);
      b[r] = (b[r] - f * b[col]).truncated(k);
    }
  }
  return b;
}

Coords centroid(const Cell& cell) {
  Coords c(cell.vertices[0].size(), Rational(0));
  for (const auto& v : cell.vertices)
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += v[i];
  for (auto& x : c) x /= q64(static_cast<std::int64_t>(cell.vertices.size()));
  return c;
}

// Power of t by which e exceeds base, when they differ only there.
std::optional<std::int64_t> t_power(const Exponent& e, const Exponent& base, int tidx) {
  for (std::size_t i = 0; i < e.size(); ++i)
    if (static_cast<int>(i) != tidx && e[i] != base[i]) return std::nullopt;
  return e[tidx] - base[tidx];
}

}  // namespace

Mu2Result mu2(const ChartComplex& c, const Structure& d, const Point& m1, std::int64_t l1, const Point& m2,
              std::int64_t l2, const Cutoffs& cut, std::uint64_t seed) {
  if (l1 <= 0 || l2 <= 0) fail(ErrorKind::domain, "mu_2 is computed for positive levels");
  std::int64_t level = l1 + l2;
  int k = static_cast<int>(cut.torder);
  int tidx = c.dim;
  std::vector<Point> basis = enumerate_rational_points(c, level);
  std::size_t n = basis.size();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> jitter(-50, 50);

  Mu2Result res;
  std::vector<std::vector<Poly>> a(n, std::vector<Poly>(n));
  std::vector<Poly> b(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto reps = c.representatives(basis[i]);
    bool done = false;
    for (int attempt = 0; attempt < 24 && !done; ++attempt) {
      const Point& rep = reps[attempt % reps.size()];
      Coords mid = centroid(c.cells[rep.cell]);
      Rational delta(1, 97 + 96 * attempt);
      Point x{rep.cell, rep.x};
      for (std::size_t j = 0; j < x.x.size(); ++j)
        x.x[j] += delta * (mid[j] - rep.x[j]) + delta * delta * Rational(jitter(rng), 101);
      try {
        auto p1 = enumerate_jagged(c, d, m1, l1, x, cut);
        auto p2 = enumerate_jagged(c, d, m2, l2, x, cut);
        std::vector<std::vector<JaggedPath>> near(n);
        for (std::size_t j = 0; j < n; ++j) near[j] = enumerate_jagged(c, d, basis[j], level, x, cut);
        Exponent pphi = m_phi(c, rep, level).exponent;
        std::vector<BalancedPair> pairs;
        Poly bi;
        for (const auto& g1 : p1)
          for (const auto& g2 : p2) {
            auto e = t_power(g1.last().q + g2.last().q, pphi, tidx);
            if (!e || *e < 0 || *e > k) continue;
            Rational coeff = g1.last().coeff * g2.last().coeff;
            bi = bi + Poly::monomial(coeff, static_cast<int>(*e));
            pairs.push_back({basis[i], x, g1.segments, g2.segments, *e, coeff});
          }
        for (std::size_t j = 0; j < n; ++j) {
          Poly aij;
          for (const auto& g : near[j]) {
            auto e = t_power(g.last().q, pphi, tidx);
            if (e && *e >= 0 && *e <= k) aij = aij + Poly::monomial(g.last().coeff, static_cast<int>(*e));
          }
          a[i][j] = aij;
          if (j != i && !aij.is_zero()) ++res.corrections;
        }
        b[i] = bi;
        for (auto& p : pairs) res.pairs.push_back(std::move(p));
        done = true;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::genericity) throw;
      }
    }
    if (!done) fail(ErrorKind::genericity, "no generic point found near " + to_string(basis[i]));
  }
  std::vector<Poly> coeffs = solve_series(a, b, k);
  res.product.level = level;
  for (std::size_t j = 0; j < n; ++j)
    if (!coeffs[j].is_zero()) res.product.coeffs[c.canonical(basis[j])] = coeffs[j];
  return res;
}

}  // namespace jag
