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

#include "jagged/mumford.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <set>
#include <sstream>
#include <tuple>

#include "jagged/error.hpp"
#include "jagged/json_util.hpp"
#include "jagged/theta.hpp"

namespace jag {

namespace {

Coords add(const Coords& a, const Coords& b) {
  Coords r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

Coords scale(const Coords& a, const Rational& s) {
  Coords r(a);
  for (auto& v : r) v *= s;
  return r;
}

Coords to_coords(const std::vector<std::int64_t>& v) {
  Coords r;
  for (auto x : v) r.push_back(Rational(static_cast<long>(x)));
  return r;
}

Coords generator(const MumfordData& d, int i) { return to_coords(d.gamma[i]); }

// f(m + v) as an affine function of m.
AffineFn shifted(const AffineFn& f, const Coords& v) {
  AffineFn r = f;
  for (std::size_t i = 0; i < v.size(); ++i) r.constant += f.slope[i] * v[i];
  return r;
}

bool in_cell(const std::vector<Coords>& cell, const Coords& y) {
  if (y.size() == 1) {
    Rational lo = std::min(cell[0][0], cell[1][0]), hi = std::max(cell[0][0], cell[1][0]);
    return lo <= y[0] && y[0] <= hi;
  }
  int orient = 0;
  Vec2 p(y);
  for (std::size_t i = 0; i < cell.size(); ++i) {
    Vec2 a(cell[i]), b(cell[(i + 1) % cell.size()]);
    int s = sign(cross(b - a, p - a));
    if (s == 0) continue;
    if (orient != 0 && s != orient) return false;
    orient = s;
  }
  return true;
}

// Coordinates of y in the basis of generators.
Coords lattice_coords(const MumfordData& d, const Coords& y) {
  if (d.rank == 1) return {y[0] / Rational(static_cast<long>(d.gamma[0][0]))};
  Rational a(static_cast<long>(d.gamma[0][0])), b(static_cast<long>(d.gamma[1][0]));
  Rational c(static_cast<long>(d.gamma[0][1])), e(static_cast<long>(d.gamma[1][1]));
  Rational det = a * e - b * c;
  return {(e * y[0] - b * y[1]) / det, (a * y[1] - c * y[0]) / det};
}

int cell_of(const MumfordData& d, const Coords& y) {
  for (std::size_t i = 0; i < d.cells.size(); ++i)
    if (in_cell(d.cells[i], y)) return static_cast<int>(i);
  return -1;
}

// Visits lattice vectors shell by shell (max norm R) until two consecutive
// shells have every value above k. `value` returns the t-order of n.
void walk_shells(int rank, std::int64_t k, const std::function<Rational(const std::vector<std::int64_t>&)>& value) {
  int quiet = 0;
  for (std::int64_t r = 0; quiet < 2; ++r) {
    if (r > 10000) fail(ErrorKind::check_failed, "lattice sum does not converge");
    bool any = false;
    auto visit = [&](const std::vector<std::int64_t>& n) {
      if (value(n) <= Rational(static_cast<long>(k))) any = true;
    };
    if (rank == 1) {
      visit({r});
      if (r != 0) visit({-r});
    } else {
      for (std::int64_t i = -r; i <= r; ++i)
        for (std::int64_t j = -r; j <= r; ++j)
          if (std::max(std::abs(i), std::abs(j)) == r) visit({i, j});
    }
    quiet = any ? 0 : quiet + 1;
  }
}

Rational torder_in(const MumfordData& d, int cell, const Coords& y, std::int64_t level) {
  return Rational(static_cast<long>(level)) * (mumford_phi(d, y) - d.phi[cell](y));
}

}  // namespace

MumfordData mumford_from_json(const nlohmann::json& doc) {
  if (!doc.contains("torus")) fail(ErrorKind::validation, "document has no torus block");
  MumfordData d;
  const auto& t = doc["torus"];
  d.rank = static_cast<int>(json_int(t.at("rank")));
  if (d.rank != 1 && d.rank != 2) fail(ErrorKind::validation, "torus rank must be 1 or 2");
  for (const auto& g : t.at("gamma")) {
    std::vector<std::int64_t> v;
    for (const auto& x : g) v.push_back(json_int(x));
    if (static_cast<int>(v.size()) != d.rank) fail(ErrorKind::validation, "torus generator has the wrong size");
    d.gamma.push_back(v);
  }
  if (static_cast<int>(d.gamma.size()) != d.rank) fail(ErrorKind::validation, "torus needs one generator per dimension");
  d.alpha.assign(d.rank, AffineFn::zero(d.rank));
  for (const auto& a : t.at("alpha")) {
    auto i = json_int(a.at("gamma_index"));
    if (i < 0 || i >= d.rank) fail(ErrorKind::validation, "alpha refers to a missing generator");
    AffineFn f = AffineFn::zero(d.rank);
    for (int j = 0; j < d.rank; ++j) f.slope[j] = json_rational(a.at("slope").at(j));
    f.constant = json_rational(a.at("constant"));
    d.alpha[i] = f;
  }
  // Gamma is abelian, so alpha_i(m + g_j) + alpha_j(m) = alpha_j(m + g_i) + alpha_i(m).
  for (int i = 0; i < d.rank; ++i)
    for (int j = 0; j < d.rank; ++j)
      if (d.alpha[i](generator(d, j)) - d.alpha[i].constant != d.alpha[j](generator(d, i)) - d.alpha[j].constant)
        fail(ErrorKind::validation, "alpha is not a cocycle");
  for (const auto& c : doc.at("cells")) {
    std::vector<Coords> verts;
    for (const auto& v : c.at("vertices")) {
      Coords p;
      for (const auto& x : v) p.push_back(json_rational(x));
      verts.push_back(p);
    }
    d.cells.push_back(verts);
  }
  d.phi.assign(d.cells.size(), AffineFn::zero(d.rank));
  for (const auto& p : doc.at("phi")) {
    auto i = json_int(p.at("cell"));
    AffineFn f = AffineFn::zero(d.rank);
    for (int j = 0; j < d.rank; ++j) f.slope[j] = json_rational(p.at("slope").at(j));
    f.constant = json_rational(p.at("constant"));
    d.phi.at(i) = f;
  }
  return d;
}

std::vector<std::int64_t> lattice_vector(const MumfordData& d, const std::vector<std::int64_t>& n) {
  std::vector<std::int64_t> v(d.rank, 0);
  for (int i = 0; i < d.rank; ++i)
    for (int j = 0; j < d.rank; ++j) v[j] += n[i] * d.gamma[i][j];
  return v;
}

AffineFn mumford_alpha(const MumfordData& d, const std::vector<std::int64_t>& n) {
  AffineFn a = AffineFn::zero(d.rank);
  std::vector<std::int64_t> cur(d.rank, 0);
  for (int i = 0; i < d.rank; ++i) {
    Coords g = generator(d, i);
    for (std::int64_t s = 0; s < std::abs(n[i]); ++s) {
      if (n[i] > 0) {
        // alpha_{cur + g}(m) = alpha_cur(m + g) + alpha_g(m)
        a = shifted(a, g) + d.alpha[i];
      } else {
        // alpha_{cur - g}(m) = alpha_cur(m - g) - alpha_g(m - g)
        Coords mg = scale(g, -1);
        a = shifted(a, mg) - shifted(d.alpha[i], mg);
      }
    }
  }
  return a;
}

Exponent mumford_psi(const MumfordData& d, const std::vector<std::int64_t>& n, const Exponent& e) {
  auto g = lattice_vector(d, n);
  AffineFn a = mumford_alpha(d, n);
  std::int64_t l = e[d.rank + 1];
  Exponent r(e);
  Rational dr = Rational(static_cast<long>(l)) * a.constant;
  for (int i = 0; i < d.rank; ++i) {
    r[i] += l * g[i];
    dr += a.slope[i] * Rational(static_cast<long>(e[i]));
  }
  r[d.rank] += to_int64(dr);
  return r;
}

Rational mumford_phi(const MumfordData& d, const Coords& y) {
  Rational acc = 0;
  Coords z = y;
  for (int iter = 0; iter < 100000; ++iter) {
    int c = cell_of(d, z);
    if (c >= 0) return acc + d.phi[c](z);
    Coords n = lattice_coords(d, z);
    int i = 0;
    while (i < d.rank && n[i] >= 0 && n[i] < 1) ++i;
    if (i == d.rank) fail(ErrorKind::validation, "torus cells do not cover the fundamental domain at " + to_string(y));
    Coords g = generator(d, i);
    if (n[i] < 0) {
      acc -= d.alpha[i](z);
      z = add(z, g);
    } else {
      z = add(z, scale(g, -1));
      acc += d.alpha[i](z);
    }
  }
  fail(ErrorKind::check_failed, "phi evaluation did not terminate");
}

Coords mumford_reduce(const MumfordData& d, const Coords& y) {
  Coords n = lattice_coords(d, y);
  Coords r = y;
  for (int i = 0; i < d.rank; ++i) r = add(r, scale(generator(d, i), -floor_div(n[i])));
  return r;
}

std::vector<Coords> mumford_basis(const MumfordData& d, std::int64_t level) {
  std::int64_t bound = 0;
  for (const auto& g : d.gamma)
    for (auto x : g) bound += std::abs(x);
  bound *= level;
  std::set<Coords> pts;
  Rational inv(1, static_cast<long>(level));
  if (d.rank == 1) {
    for (std::int64_t p = -bound; p <= bound; ++p) pts.insert(mumford_reduce(d, {Rational(static_cast<long>(p)) * inv}));
  } else {
    for (std::int64_t p = -bound; p <= bound; ++p)
      for (std::int64_t q = -bound; q <= bound; ++q)
        pts.insert(mumford_reduce(d, {Rational(static_cast<long>(p)) * inv, Rational(static_cast<long>(q)) * inv}));
  }
  return {pts.begin(), pts.end()};
}

TruncatedSeries mumford_theta(const MumfordData& d, const Coords& m, std::int64_t level, int cell, std::int64_t k) {
  std::vector<Rational> w(d.rank + 2, Rational(0));
  for (int i = 0; i < d.rank; ++i) w[i] = -d.phi.at(cell).slope[i];
  w[d.rank] = 1;
  w[d.rank + 1] = -d.phi.at(cell).constant;
  auto alg = make_algebra(d.rank + 2, k, std::numeric_limits<int>::max() / 2, w);
  TruncatedSeries out = TruncatedSeries::zero(alg);
  Rational lq(static_cast<long>(level));
  walk_shells(d.rank, k, [&](const std::vector<std::int64_t>& n) {
    Coords y = add(m, to_coords(lattice_vector(d, n)));
    Rational ord = torder_in(d, cell, y, level);
    if (ord <= Rational(static_cast<long>(k))) {
      Exponent e;
      for (const auto& v : y) e.push_back(to_int64(v * lq));
      e.push_back(to_int64(lq * mumford_phi(d, y)));
      e.push_back(level);
      out.add_term(e, Rational(1));
    }
    return ord;
  });
  return out;
}

MumfordExpansion mumford_product(const MumfordData& d, const Coords& m1, std::int64_t l1, const Coords& m2,
                                 std::int64_t l2, std::int64_t k) {
  // Pairs (g1, g2) and (g1 + g, g2 + g) give the same term, so g2 = 0.
  MumfordExpansion out;
  out.level = l1 + l2;
  Rational a(static_cast<long>(l1)), b(static_cast<long>(l2)), l(static_cast<long>(l1 + l2));
  Rational base = b * mumford_phi(d, m2);
  walk_shells(d.rank, k, [&](const std::vector<std::int64_t>& n) {
    Coords y1 = add(m1, to_coords(lattice_vector(d, n)));
    Coords p = scale(add(scale(y1, a), scale(m2, b)), 1 / l);
    Rational e = a * mumford_phi(d, y1) + base - l * mumford_phi(d, p);
    if (e <= Rational(static_cast<long>(k))) {
      auto& c = out.coeffs[mumford_reduce(d, p)];
      c = c + Poly::monomial(Rational(1), static_cast<int>(to_int64(e)));
    }
    return e;
  });
  for (auto it = out.coeffs.begin(); it != out.coeffs.end();)
    it = it->second.is_zero() ? out.coeffs.erase(it) : std::next(it);
  return out;
}

MumfordExpansion mumford_product_by_solve(const MumfordData& d, const Coords& m1, std::int64_t l1, const Coords& m2,
                                          std::int64_t l2, std::int64_t k) {
  // In the chart of a cell containing y0, theta_m at level l has exactly one
  // monomial over l*y0, namely (l y0, l phi(y0), l), so the system is diagonal.
  MumfordExpansion out;
  out.level = l1 + l2;
  Rational lq(static_cast<long>(out.level));
  std::map<int, TruncatedSeries> products;
  for (const auto& y0 : mumford_basis(d, out.level)) {
    int cell = cell_of(d, y0);
    auto it = products.find(cell);
    if (it == products.end())
      it = products.emplace(cell, mumford_theta(d, m1, l1, cell, k) * mumford_theta(d, m2, l2, cell, k)).first;
    Poly c;
    for (const auto& [e, term] : it->second.terms()) {
      bool over = true;
      for (int i = 0; i < d.rank; ++i) over = over && Rational(static_cast<long>(e[i])) == lq * y0[i];
      if (!over) continue;
      auto ord = to_int64(Rational(static_cast<long>(e[d.rank])) - lq * mumford_phi(d, y0));
      c = c + Poly::monomial(it->second.coeff(e), static_cast<int>(ord));
    }
    if (!c.is_zero()) out.coeffs[y0] = c;
  }
  return out;
}

namespace {

std::string coords_text(const Coords& m) { return "(" + to_string(m) + ")"; }

Point complex_point(const MumfordData& d, const ChartComplex& c, const Coords& m) {
  int cell = cell_of(d, m);
  if (cell < 0) fail(ErrorKind::validation, "point " + to_string(m) + " is outside the fundamental domain");
  return c.canonical(Point{cell, m});
}

std::map<Exponent, Rational> low_terms(const TruncatedSeries& s, std::int64_t k) {
  std::map<Exponent, Rational> r;
  for (const auto& [e, term] : s.terms())
    if (s.algebra().torder(e) <= Rational(static_cast<long>(k))) r[e] = s.coeff(e);
  return r;
}

}  // namespace

EquivalenceReport equivalence_check(const MumfordData& d, const ChartComplex& c, const Structure& s,
                                    std::int64_t max_level, const Cutoffs& cut, int samples_per_cell,
                                    std::uint64_t seed) {
  EquivalenceReport rep;
  const std::int64_t k = cut.torder;
  auto record = [&](bool ok, const std::string& what) {
    rep.lines.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
    if (!ok) ++rep.failures;
  };
  // Every lift at a sample is taken before any is compared, so that a
  // sample meeting a focus line at some level can be redrawn.
  for (int cell = 0; cell < static_cast<int>(c.cells.size()); ++cell)
    for (int j = 0; j < samples_per_cell; ++j) {
      std::vector<std::tuple<std::int64_t, Coords, std::map<Exponent, Rational>>> lifts;
      Point x;
      for (int attempt = 0;; ++attempt) {
        x = generic_point(c, s, cell, seed + 7919 * j + cell + 104729 * attempt);
        lifts.clear();
        try {
          for (std::int64_t level = 1; level <= max_level; ++level)
            for (const auto& m : mumford_basis(d, level))
              lifts.emplace_back(level, m, low_terms(lift(c, s, complex_point(d, c, m), level, x, cut), k));
          break;
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::genericity || attempt >= 32) throw;
        }
      }
      for (const auto& [level, m, got] : lifts) {
        auto want = low_terms(mumford_theta(d, m, level, x.cell, k), k);
        std::ostringstream os;
        os << "lift theta[" << level << "]" << coords_text(m) << " at " << x.cell << coords_text(x.x) << ": "
           << got.size() << " terms";
        if (got != want) {
          os << ", lattice sum has " << want.size();
          for (const auto& [e, v] : want)
            if (!got.count(e) || got.at(e) != v) {
              os << "; first difference at " << to_string(e);
              break;
            }
          for (const auto& [e, v] : got)
            if (!want.count(e)) {
              os << "; extra term " << to_string(e);
              break;
            }
        }
        record(got == want, os.str());
      }
    }

  ThetaEngine engine(c, s, cut, seed);
  for (std::int64_t l1 = 1; 2 * l1 <= max_level; ++l1)
    for (std::int64_t l2 = l1; l1 + l2 <= max_level; ++l2)
      for (const auto& m1 : mumford_basis(d, l1))
        for (const auto& m2 : mumford_basis(d, l2)) {
          ThetaExpansion got = engine.multiply(complex_point(d, c, m1), l1, complex_point(d, c, m2), l2);
          MumfordExpansion want = mumford_product(d, m1, l1, m2, l2, k);
          std::map<Coords, Poly> mine;
          for (const auto& [p, poly] : got.coeffs) {
            Poly q = poly.truncated(static_cast<int>(k));
            if (!q.is_zero()) mine[mumford_reduce(d, p.x)] = q;
          }
          bool ok = mine == want.coeffs;
          std::ostringstream os;
          os << "theta[" << l1 << "]" << coords_text(m1) << " * theta[" << l2 << "]" << coords_text(m2) << ": "
             << mine.size() << " basis terms";
          if (!ok) {
            os << "; lattice sum:";
            for (const auto& [p, poly] : want.coeffs) os << " " << coords_text(p) << " " << poly.to_string();
            os << "; paths:";
            for (const auto& [p, poly] : mine) os << " " << coords_text(p) << " " << poly.to_string();
          }
          record(ok, os.str());
        }
  return rep;
}

}  // namespace jag
