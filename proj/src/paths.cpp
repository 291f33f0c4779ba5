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

#include "jagged/paths.hpp"

#include <algorithm>
#include <random>

#include "jagged/error.hpp"

namespace jag {

namespace {

constexpr std::size_t kMaxNodes = 2000000;

// A wall line inside one cell: an edge, or the common line of interior pieces.
struct WallLine {
  Vec2 a, b;  // the part of the line inside the cell
  int edge = -1;
  std::vector<const RayPiece*> pieces;
};

bool on_line(const Vec2& a, const Vec2& b, const Vec2& p) { return cross(b - a, p - a) == 0; }

// Clip the line through a, b to a convex ccw polygon; returns the endpoints.
std::optional<std::pair<Vec2, Vec2>> clip_to_cell(const std::vector<Coords>& poly, const Vec2& a, const Vec2& b) {
  Interval iv{Rational(-1000000), Rational(1000000)};
  for (std::size_t i = 0; i < poly.size(); ++i) {
    Vec2 p(poly[i]), q(poly[(i + 1) % poly.size()]);
    iv = clip_halfplane(a, b, iv, p, q - p, 1);
    if (iv.empty()) return std::nullopt;
  }
  if (iv.degenerate()) return std::nullopt;
  return std::make_pair(a + (b - a) * iv.lo, a + (b - a) * iv.hi);
}

// Travel direction of a segment carrying q at the point p.
Vec2 travel(const Exponent& q, const Vec2& p) {
  Rational d(static_cast<long>(q[3]));
  return p * d - Vec2(Rational(static_cast<long>(q[0])), Rational(static_cast<long>(q[1])));
}

struct Node {
  int parent = -1;
  int cell = 0;
  Exponent q;
  Rational coeff;
  int bends = 0, length = 0;
  bool start = false;   // segment leaves the point m
  Vec2 m;               // when start
  Vec2 a, b;            // source interval otherwise
  bool has_transition = false;
  Transition into;      // from the parent chart
  std::optional<PathBend> bend;
};

class Engine {
 public:
  Engine(const ChartComplex& c, const Structure& d, const Point& x, const Cutoffs& cut)
      : c_(c), d_(d), x_(x), cut_(cut) {
    for (int k = 0; k < static_cast<int>(c.cells.size()); ++k) lines_.push_back(build_lines(k));
  }

  void add_root(Node n) {
    n.parent = -1;
    push(std::move(n));
  }

  std::vector<JaggedPath> run() {
    for (std::size_t i = 0; i < nodes_.size(); ++i) expand(static_cast<int>(i));
    return std::move(out_);
  }

 private:
  const ChartComplex& c_;
  const Structure& d_;
  Point x_;
  Cutoffs cut_;
  std::vector<std::vector<WallLine>> lines_;
  std::vector<Node> nodes_;
  std::vector<JaggedPath> out_;

  std::vector<WallLine> build_lines(int cell) const {
    std::vector<WallLine> out;
    const auto& v = c_.cells[cell].vertices;
    for (int e = 0; e < c_.num_edges(cell); ++e) {
      WallLine l;
      l.a = Vec2(v[e]);
      l.b = Vec2(v[(e + 1) % v.size()]);
      l.edge = e;
      out.push_back(l);
    }
    for (const auto* p : d_.pieces_in(cell)) {
      bool placed = false;
      for (auto& l : out) {
        if (on_line(l.a, l.b, p->a) && on_line(l.a, l.b, p->b)) {
          l.pieces.push_back(p);
          placed = true;
          break;
        }
      }
      if (placed) continue;
      auto seg = clip_to_cell(v, p->a, p->b);
      if (!seg) continue;
      WallLine l;
      l.a = seg->first;
      l.b = seg->second;
      l.pieces.push_back(p);
      out.push_back(l);
    }
    return out;
  }

  void push(Node n) {
    if (nodes_.size() >= kMaxNodes) fail(ErrorKind::unsupported, "jagged path enumeration exceeded its node budget");
    nodes_.push_back(std::move(n));
  }

  // Parameter interval of the wall line reachable by segments leaving node n.
  Interval reachable(const Node& n, const WallLine& l) const {
    Interval iv{Rational(0), Rational(1)};
    if (n.start) return iv;
    Vec2 w0 = travel(n.q, n.a), w1 = travel(n.q, n.b);
    Vec2 mid = (n.a + n.b) * Rational(1, 2);
    iv = clip_halfplane(l.a, l.b, iv, n.a, w0, sign(cross(w0, n.b - n.a)));
    if (iv.empty()) return iv;
    iv = clip_halfplane(l.a, l.b, iv, n.b, w1, sign(cross(w1, n.a - n.b)));
    if (iv.empty()) return iv;
    return clip_halfplane(l.a, l.b, iv, n.a, n.b - n.a, sign(cross(n.b - n.a, travel(n.q, mid))));
  }

  bool reaches(const Node& n, const Vec2& y) const {
    if (n.start) return y != n.m;
    Vec2 w0 = travel(n.q, n.a), w1 = travel(n.q, n.b);
    Vec2 mid = (n.a + n.b) * Rational(1, 2);
    auto strictly = [](const Rational& v, int s) { return s != 0 && sign(v) == s; };
    return strictly(cross(w0, y - n.a), sign(cross(w0, n.b - n.a))) &&
           strictly(cross(w1, y - n.b), sign(cross(w1, n.a - n.b))) &&
           strictly(cross(n.b - n.a, y - n.a), sign(cross(n.b - n.a, travel(n.q, mid))));
  }

  // x on the closure but not the interior of the reachable region: the
  // path through a wall endpoint or singular point is ambiguous.
  bool grazes(const Node& n, const Vec2& y) const {
    if (n.start) return false;
    Vec2 w0 = travel(n.q, n.a), w1 = travel(n.q, n.b);
    Vec2 mid = (n.a + n.b) * Rational(1, 2);
    auto weakly = [](const Rational& v, int s) { return s != 0 && sign(v) != -s; };
    return weakly(cross(w0, y - n.a), sign(cross(w0, n.b - n.a))) &&
           weakly(cross(w1, y - n.b), sign(cross(w1, n.a - n.b))) &&
           weakly(cross(n.b - n.a, y - n.a), sign(cross(n.b - n.a, travel(n.q, mid))));
  }

  bool skip_line(const Node& n, const WallLine& l) const {
    if (n.start) return on_line(l.a, l.b, n.m);
    return on_line(l.a, l.b, n.a) && on_line(l.a, l.b, n.b);
  }

  std::vector<Rational> split_params(const WallLine& l, int cell) const {
    std::vector<Rational> cuts;
    for (const auto* p : l.pieces) {
      cuts.push_back(line_param(l.a, l.b, p->a));
      cuts.push_back(line_param(l.a, l.b, p->b));
    }
    if (l.edge >= 0) {
      if (auto sp = c_.singular_param(cell, l.edge)) cuts.push_back(*sp);
    }
    return cuts;
  }

  std::vector<const RayPiece*> cover(const WallLine& l, const Rational& s) const {
    std::vector<const RayPiece*> out;
    for (const auto* p : l.pieces) {
      Rational s0 = line_param(l.a, l.b, p->a), s1 = line_param(l.a, l.b, p->b);
      if (std::min(s0, s1) < s && s < std::max(s0, s1)) out.push_back(p);
    }
    return out;
  }

  bool admissible(const Node& n) const {
    return c_.torder(n.cell, n.q) <= Rational(static_cast<long>(cut_.torder)) && n.bends <= cut_.max_bends &&
           n.length <= cut_.max_length;
  }

  void expand(int idx) {
    const Node n = nodes_[idx];
    if (n.cell == x_.cell) {
      Vec2 y(x_.x);
      // No direction of travel at the focus itself.
      if (travel(n.q, y) == Vec2(0, 0))
        fail(ErrorKind::genericity, "point " + to_string(x_) + " is the focus of a path monomial; perturb x");
      if (reaches(n, y)) out_.push_back(solve(idx));
      else if (grazes(n, y))
        fail(ErrorKind::genericity, "point " + to_string(x_) + " is aligned with a wall endpoint; perturb x");
    }
    AlgebraPtr alg = make_algebra(c_.dim + 2, cut_.torder, cut_.max_length, c_.torder_weights(n.cell));
    for (const auto& l : lines_[n.cell]) {
      if (skip_line(n, l)) continue;
      if (l.edge < 0 && l.pieces.empty()) continue;
      if (l.edge >= 0 && c_.is_boundary(n.cell, l.edge)) continue;
      Interval j = reachable(n, l);
      if (j.degenerate()) continue;
      std::vector<Rational> cuts{j.lo, j.hi};
      for (const auto& s : split_params(l, n.cell))
        if (j.contains_open(s)) cuts.push_back(s);
      std::sort(cuts.begin(), cuts.end());
      cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
      for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        Rational lo = cuts[k], hi = cuts[k + 1];
        Rational mid = (lo + hi) / 2;
        Vec2 pm = l.a + (l.b - l.a) * mid;
        Vec2 w = travel(n.q, pm);
        if (cross(l.b - l.a, w) == 0) continue;
        Vec2 side = pm - w;
        auto pieces = cover(l, mid);
        Vec2 pa = l.a + (l.b - l.a) * lo, pb = l.a + (l.b - l.a) * hi;
        std::vector<BendTerm> terms;
        if (!pieces.empty()) terms = bend_expansion(pieces, n.q, side, alg);
        if (l.edge >= 0 && pieces.empty()) terms.push_back({Rational(1), Exponent(n.q.size(), 0), 0});
        for (const auto& t : terms) {
          bool trivial = std::all_of(t.increment.begin(), t.increment.end(), [](std::int64_t v) { return v == 0; });
          if (trivial && l.edge < 0) continue;
          Node ch;
          ch.parent = idx;
          ch.cell = n.cell;
          ch.q = n.q + t.increment;
          ch.coeff = n.coeff * t.coeff;
          ch.bends = n.bends + (trivial ? 0 : 1);
          ch.length = n.length + t.length;
          ch.a = pa;
          ch.b = pb;
          if (!trivial) {
            // The bent segment must still cross the wall.
            if (crossing_exponent(*pieces[0], ch.q, side) <= 0) continue;
            ch.bend = PathBend{pieces[0]->ray, 0, t.increment, t.coeff};
          }
          if (!admissible(ch)) continue;
          if (l.edge >= 0) {
            Crossing cr = c_.cross(n.cell, l.edge, mid);
            ch.cell = cr.to_cell;
            ch.q = cr.transition.apply(Layer::ptilde, ch.q);
            ch.a = cr.transition.map.apply(pa);
            ch.b = cr.transition.map.apply(pb);
            ch.has_transition = true;
            ch.into = cr.transition;
            if (!admissible(ch)) continue;
          }
          push(std::move(ch));
        }
      }
    }
  }

  // Backward reconstruction of the unique path of a node chain ending at x.
  JaggedPath solve(int idx) const {
    std::vector<int> chain;
    for (int i = idx; i >= 0; i = nodes_[i].parent) chain.push_back(i);
    std::reverse(chain.begin(), chain.end());
    std::vector<PathSegment> segs(chain.size());
    Vec2 end(x_.x);
    for (int k = static_cast<int>(chain.size()) - 1; k >= 0; --k) {
      const Node& n = nodes_[chain[k]];
      Vec2 begin;
      if (n.start) {
        begin = n.m;
      } else {
        Vec2 dir;
        Vec2 base = end;
        if (n.q[3] != 0) {
          Vec2 f = Vec2(Rational(static_cast<long>(n.q[0])), Rational(static_cast<long>(n.q[1]))) *
                   Rational(1, static_cast<long>(n.q[3]));
          dir = end - f;
        } else {
          dir = Vec2(Rational(static_cast<long>(n.q[0])), Rational(static_cast<long>(n.q[1])));
        }
        auto hit = intersect_lines(base, dir, n.a, n.b - n.a);
        if (!hit) fail(ErrorKind::genericity, "segment parallel to its source wall");
        begin = *hit;
        Rational s = line_param(n.a, n.b, begin);
        if (!(s > 0 && s < 1)) fail(ErrorKind::genericity, "target point is aligned with a wall endpoint; perturb x");
        Vec2 w = travel(n.q, begin);
        Vec2 along = end - begin;
        if (cross(w, along) != 0 || dot(w, along) <= 0) fail(ErrorKind::geometry, "inconsistent jagged segment");
      }
      segs[k] = {n.cell, begin.coords(), end.coords(), n.q, n.coeff};
      if (n.has_transition) end = n.into.map.inverse().apply(begin);
      else end = begin;
    }
    JaggedPath p;
    p.segments = segs;
    for (std::size_t k = 0; k < chain.size(); ++k) {
      const Node& n = nodes_[chain[k]];
      if (n.bend) {
        PathBend b = *n.bend;
        b.segment = static_cast<int>(k);
        p.bends.push_back(b);
      }
      p.length = n.length;
    }
    return p;
  }
};

std::vector<JaggedPath> enumerate_1d(const ChartComplex& c, const Point& m, std::int64_t level, const Point& x,
                                     const Cutoffs& cut) {
  std::vector<JaggedPath> out;
  Rational k(static_cast<long>(cut.torder));
  for (const auto& rep : c.representatives(m))
    if (rep == x) fail(ErrorKind::genericity, "point " + to_string(x) + " is the basis point itself; perturb x");
  for (const auto& rep : c.representatives(m)) {
    Germ g = m_phi(c, rep, level);
    for (int dir : {1, -1}) {
      const auto& v = c.cells[rep.cell].vertices;
      Rational pos = rep.x[0];
      if ((dir > 0 && pos == v[1][0]) || (dir < 0 && pos == v[0][0])) continue;
      JaggedPath path;
      int cell = rep.cell;
      Exponent q = g.exponent;
      for (int guard = 0; guard < 100000; ++guard) {
        if (c.torder(cell, q) > k) break;
        const auto& w = c.cells[cell].vertices;
        if (cell == x.cell && (x.x[0] - pos) * dir > 0) {
          JaggedPath done = path;
          done.segments.push_back({cell, {pos}, x.x, q, Rational(1)});
          out.push_back(done);
        }
        int edge = dir > 0 ? 1 : 0;
        Rational exit = dir > 0 ? w[1][0] : w[0][0];
        path.segments.push_back({cell, {pos}, {exit}, q, Rational(1)});
        if (c.is_boundary(cell, edge)) break;
        Crossing cr = c.cross(cell, edge, 0);
        q = cr.transition.apply(Layer::ptilde, q);
        pos = cr.transition.map.apply(Coords{exit})[0];
        dir = static_cast<int>(cr.transition.map.m[0]) * dir;
        cell = cr.to_cell;
      }
    }
  }
  return out;
}

}  // namespace

AlgebraPtr lift_algebra(const ChartComplex& c, int cell, const Cutoffs& cut) {
  return make_algebra(c.dim + 2, cut.torder, cut.max_length, c.torder_weights(cell));
}

void check_generic(const ChartComplex& c, const Structure& d, const Point& x) {
  auto loc = c.locate(x.cell, x.x);
  if (loc.kind != ChartComplex::Location::interior)
    fail(ErrorKind::genericity, "point " + to_string(x) + " is not interior to a cell; try " +
                                    to_string(generic_point(c, d, x.cell, 0)));
  if (c.dim != 2) return;
  for (const auto* p : d.pieces_in(x.cell))
    if (on_line(p->a, p->b, Vec2(x.x)))
      fail(ErrorKind::genericity, "point " + to_string(x) + " lies on the line of ray " +
                                      d.rays[p->ray].name + "; try " + to_string(generic_point(c, d, x.cell, 0)));
}

Point generic_point(const ChartComplex& c, const Structure& d, int cell, std::uint64_t seed,
                    std::int64_t denominator_bound) {
  std::mt19937_64 rng(seed);
  const auto& v = c.cells.at(cell).vertices;
  std::vector<Rational> lo(c.dim), hi(c.dim);
  for (int i = 0; i < c.dim; ++i) {
    lo[i] = hi[i] = v[0][i];
    for (const auto& p : v) {
      lo[i] = std::min(lo[i], p[i]);
      hi[i] = std::max(hi[i], p[i]);
    }
  }
  std::uniform_int_distribution<std::int64_t> den(2, std::max<std::int64_t>(2, denominator_bound));
  for (int attempt = 0; attempt < 100000; ++attempt) {
    std::int64_t q = den(rng);
    Coords x;
    for (int i = 0; i < c.dim; ++i) {
      std::int64_t a = to_int64(-floor_div(-lo[i] * Rational(static_cast<long>(q))));
      std::int64_t b = to_int64(floor_div(hi[i] * Rational(static_cast<long>(q))));
      if (a > b) break;
      std::uniform_int_distribution<std::int64_t> num(a, b);
      x.push_back(Rational(static_cast<long>(num(rng)), static_cast<long>(q)));
      x.back().canonicalize();
    }
    if (static_cast<int>(x.size()) != c.dim) continue;
    Point p{cell, x};
    if (c.locate(cell, x).kind != ChartComplex::Location::interior) continue;
    bool bad = false;
    if (c.dim == 2)
      for (const auto* r : d.pieces_in(cell))
        if (on_line(r->a, r->b, Vec2(x))) bad = true;
    if (!bad) return p;
  }
  fail(ErrorKind::genericity, "no generic point found in cell " + std::to_string(cell));
}

std::vector<JaggedPath> enumerate_jagged(const ChartComplex& c, const Structure& d, const Point& m,
                                         std::int64_t level, const Point& x, const Cutoffs& cut) {
  if (level <= 0) fail(ErrorKind::domain, "jagged paths need a positive level");
  check_generic(c, d, x);
  if (c.dim == 1) return enumerate_1d(c, m, level, x, cut);
  Engine eng(c, d, x, cut);
  for (const auto& rep : c.representatives(m)) {
    Node n;
    n.cell = rep.cell;
    n.q = m_phi(c, rep, level).exponent;
    n.coeff = 1;
    n.start = true;
    n.m = Vec2(rep.x);
    if (c.torder(n.cell, n.q) > Rational(static_cast<long>(cut.torder))) continue;
    eng.add_root(n);
  }
  return eng.run();
}

std::vector<JaggedPath> enumerate_broken(const ChartComplex& c, const Structure& d,
                                         const std::vector<BrokenStart>& starts, const Point& x,
                                         const Cutoffs& cut) {
  if (c.dim != 2) fail(ErrorKind::unsupported, "broken lines are traced on two-dimensional complexes");
  check_generic(c, d, x);
  Engine eng(c, d, x, cut);
  for (const auto& s : starts) {
    if (s.q.size() != 4 || s.q[3] != 0) fail(ErrorKind::domain, "broken lines carry degree-zero monomials");
    Node n;
    n.cell = s.cell;
    n.q = s.q;
    n.coeff = 1;
    n.a = s.a;
    n.b = s.b;
    if (c.torder(n.cell, n.q) > Rational(static_cast<long>(cut.torder))) continue;
    eng.add_root(n);
  }
  return eng.run();
}

TruncatedSeries sum_paths(const ChartComplex& c, const std::vector<JaggedPath>& paths, int cell,
                          const Cutoffs& cut) {
  TruncatedSeries s = TruncatedSeries::zero(lift_algebra(c, cell, cut));
  for (const auto& p : paths) {
    if (p.last().cell != cell) fail(ErrorKind::domain, "path ends in another cell");
    s.add_term(p.last().q, p.last().coeff, p.length);
  }
  return s;
}

TruncatedSeries lift(const ChartComplex& c, const Structure& d, const Point& m, std::int64_t level,
                     const Point& x, const Cutoffs& cut) {
  return sum_paths(c, enumerate_jagged(c, d, m, level, x, cut), x.cell, cut);
}

}  // namespace jag
