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

#include <map>
#include <sstream>

#include "jagged/error.hpp"
#include "jagged/paths.hpp"
#include "jagged/structure.hpp"

namespace jag {

namespace {

constexpr int kRight = 1, kTop = 2, kLeft = 3;

BrokenStart top_start(const ChartComplex& cone, int cell, const Exponent& q) {
  auto [a, b] = cone.edge_endpoints(cell, kTop);
  return {cell, q, Vec2(a), Vec2(b)};
}

// A path on the base: cell, endpoints and monomial of every segment.
struct Trace {
  struct Seg {
    int cell;
    Rational a, b;
    Exponent q;
  };
  std::vector<Seg> segs;
  Rational coeff;
};

Trace base_trace(const JaggedPath& p) {
  Trace t;
  for (const auto& s : p.segments) t.segs.push_back({s.cell, s.a[0], s.b[0], s.q});
  t.coeff = p.last().coeff;
  return t;
}

// (X, h) -> X / h; (u1, u2, s, 0) -> (u1, s, u2).
Trace projected(const JaggedPath& p) {
  Trace t;
  for (const auto& s : p.segments) {
    if (s.q[3] != 0) fail(ErrorKind::check_failed, "broken line with a monomial of nonzero degree");
    t.segs.push_back({s.cell, s.a[0] / s.a[1], s.b[0] / s.b[1], {s.q[0], s.q[2], s.q[1]}});
  }
  t.coeff = p.last().coeff;
  return t;
}

bool between(const Rational& v, const Rational& a, const Rational& b) {
  return (a <= v && v <= b) || (b <= v && v <= a);
}

// Drops zero-length segments (paths starting at a vertex may carry one).
Trace squeezed(Trace t) {
  std::vector<Trace::Seg> out;
  for (auto& s : t.segs)
    if (s.a != s.b) out.push_back(s);
  t.segs = out;
  return t;
}

// The broken line is the tail of the jagged path beyond its first point.
std::string mismatch(const Trace& jag, const Trace& brk) {
  if (jag.coeff != brk.coeff) return "coefficients differ";
  if (brk.segs.empty() || brk.segs.size() > jag.segs.size()) return "segment counts differ";
  std::size_t off = jag.segs.size() - brk.segs.size();
  for (std::size_t i = 0; i < brk.segs.size(); ++i) {
    const auto& j = jag.segs[off + i];
    const auto& b = brk.segs[i];
    if (j.cell != b.cell || j.q != b.q) return "segment " + std::to_string(i) + " carries another monomial";
    if (j.b != b.b) return "segment " + std::to_string(i) + " ends elsewhere";
    if (i == 0 ? !between(b.a, j.a, j.b) : j.a != b.a) return "segment " + std::to_string(i) + " starts elsewhere";
  }
  return {};
}

}  // namespace

std::vector<BrokenStart> cone_starts(const ChartComplex& cone, const ChartComplex& base, const Point& m,
                                     std::int64_t level, const Cutoffs& cut) {
  Point rep = base.canonical(m);
  Exponent e = m_phi(base, rep, level).exponent;  // (u, s, d) on the base
  Exponent q0{e[0], e[2], e[1], 0};
  std::vector<BrokenStart> out;
  Rational k(static_cast<long>(cut.torder));
  int period = static_cast<int>(cone.cells.size());
  for (int edge : {kRight, kLeft}) {
    int cell = rep.cell;
    Exponent q = q0;
    int quiet = 0;
    if (edge == kRight && cone.torder(cell, q) <= k) out.push_back(top_start(cone, cell, q));
    for (int steps = 0; quiet <= period; ++steps) {
      if (steps > 100000) fail(ErrorKind::check_failed, "cone starts do not terminate");
      if (cone.is_boundary(cell, edge)) break;
      Crossing x = cone.cross(cell, edge, Rational(1, 2));
      q = x.transition.apply(Layer::ptilde, q);
      cell = x.to_cell;
      if (cone.torder(cell, q) <= k) {
        out.push_back(top_start(cone, cell, q));
        quiet = 0;
      } else {
        ++quiet;
      }
    }
  }
  return out;
}

ConeMatch cone_correspondence(const ChartComplex& base, const Point& m, std::int64_t level, const Point& x,
                              const Rational& h, const Cutoffs& cut, std::int64_t height) {
  if (base.dim != 1) fail(ErrorKind::unsupported, "cone correspondence needs a one-dimensional base");
  if (h <= 1 || h >= Rational(static_cast<long>(height))) fail(ErrorKind::domain, "height outside the cone");
  ChartComplex cone = truncated_cone(base, height);
  Structure none_base, none_cone;
  none_base.trace(base);
  none_cone.trace(cone);

  auto jagged = enumerate_jagged(base, none_base, m, level, x, cut);
  Point top{x.cell, {x.x[0] * h, h}};
  auto broken = enumerate_broken(cone, none_cone, cone_starts(cone, base, m, level, cut), top, cut);

  ConeMatch r;
  r.jagged = static_cast<int>(jagged.size());
  r.broken = static_cast<int>(broken.size());
  std::map<Exponent, Trace> by_end;
  for (const auto& p : jagged) {
    if (!by_end.emplace(p.last().q, squeezed(base_trace(p))).second)
      r.problems.push_back("two jagged paths end with " + to_string(p.last().q));
  }
  std::map<Exponent, int> used;
  for (const auto& p : broken) {
    Trace t = squeezed(projected(p));
    const Exponent& end = t.segs.back().q;
    auto it = by_end.find(end);
    if (it == by_end.end()) {
      r.problems.push_back("broken line ending with " + to_string(end) + " has no jagged partner");
      continue;
    }
    if (++used[end] > 1) r.problems.push_back("two broken lines project to the path ending with " + to_string(end));
    std::string why = mismatch(it->second, t);
    if (!why.empty()) r.problems.push_back("path ending with " + to_string(end) + ": " + why);
  }
  for (const auto& [end, t] : by_end)
    if (!used.count(end)) r.problems.push_back("jagged path ending with " + to_string(end) + " has no broken line");
  return r;
}

}  // namespace jag
