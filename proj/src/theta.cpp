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

#include "jagged/theta.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "jagged/error.hpp"

namespace jag {

namespace {

using SparseRow = std::map<int, Rational>;

// Incremental exact elimination. Rows are kept with leading coefficient 1.
class Eliminator {
 public:
  explicit Eliminator(int unknowns) : n_(unknowns) {}

  void add(SparseRow r) {
    while (!r.empty()) {
      auto [c, v] = *r.begin();
      if (c == n_) {
        inconsistent_ = true;
        return;
      }
      auto it = piv_.find(c);
      if (it == piv_.end()) {
        for (auto& [k, x] : r) x /= v;
        piv_[c] = std::move(r);
        return;
      }
      Rational f = v;
      for (const auto& [k, x] : it->second) {
        Rational& y = r[k];
        y -= f * x;
        if (y == 0) r.erase(k);
      }
    }
  }

  bool inconsistent() const { return inconsistent_; }
  bool unique() const { return static_cast<int>(piv_.size()) == n_; }

  std::vector<Rational> solve() {
    for (auto it = piv_.rbegin(); it != piv_.rend(); ++it) {
      SparseRow& row = it->second;
      std::vector<std::pair<int, Rational>> tail;
      for (const auto& [k, x] : row)
        if (k != it->first && k < n_) tail.push_back({k, x});
      for (const auto& [k, f] : tail) {
        row.erase(k);
        Rational rhs = piv_.at(k).count(n_) ? piv_.at(k).at(n_) : Rational(0);
        Rational& y = row[n_];
        y -= f * rhs;
        if (y == 0) row.erase(n_);
      }
    }
    std::vector<Rational> x(n_);
    for (const auto& [c, row] : piv_) x[c] = row.count(n_) ? row.at(n_) : Rational(0);
    return x;
  }

 private:
  int n_;
  bool inconsistent_ = false;
  std::map<int, SparseRow> piv_;
};

// Dense reduced row echelon form over Q(t); returns the pivot columns.
std::vector<int> rref(std::vector<std::vector<RatFunc>>& a) {
  std::vector<int> pivots;
  if (a.empty()) return pivots;
  std::size_t rows = a.size(), cols = a[0].size(), r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    RatFunc inv = RatFunc(Poly(Rational(1))) / a[r][c];
    for (auto& x : a[r]) x = x * inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c].is_zero()) continue;
      RatFunc f = a[i][c];
      for (std::size_t j = 0; j < cols; ++j)
        if (!a[r][j].is_zero()) a[i][j] = a[i][j] - f * a[r][j];
    }
    pivots.push_back(static_cast<int>(c));
    ++r;
  }
  a.resize(r);
  return pivots;
}

constexpr int kMaxRedraws = 16;

// Thrown after a sample was redrawn; the caller restarts its computation.
struct Redrawn {};

Exponent t_power(int rank, int dim, std::int64_t j) {
  Exponent e(rank, 0);
  e[dim] = j;
  return e;
}

TruncatedSeries widen(const TruncatedSeries& s) {
  const AlgebraSpec& a = s.algebra();
  TruncatedSeries out = TruncatedSeries::zero(make_algebra(a.rank, a.torder_cutoff, 1 << 20, a.torder_weights));
  for (const auto& [e, t] : s.terms()) out.add_term(e, t.coeff, t.length);
  return out;
}

}  // namespace

ThetaEngine::ThetaEngine(const ChartComplex& c, const Structure& d, const Cutoffs& cut, std::uint64_t seed)
    : c_(c), d_(d), cut_(cut), seed_(seed) {
  for (int k = 0; k < static_cast<int>(c.cells.size()); ++k) samples_.push_back(generic_point(c, d, k, seed + k));
  redraws_.assign(samples_.size(), 0);
}

void ThetaEngine::resample(std::size_t i) {
  if (++redraws_[i] > kMaxRedraws) fail(ErrorKind::genericity, "no generic sample found in cell " + std::to_string(i));
  int cell = samples_[i].cell;
  samples_[i] = generic_point(c_, d_, cell, seed_ + i + 7919 * static_cast<std::uint64_t>(redraws_[i]));
  for (auto it = lifts_.begin(); it != lifts_.end();) it = std::get<0>(it->first) == i ? lifts_.erase(it) : std::next(it);
}

const std::vector<Point>& ThetaEngine::basis(std::int64_t level) {
  auto it = basis_.find(level);
  if (it == basis_.end()) it = basis_.emplace(level, enumerate_rational_points(c_, level)).first;
  return it->second;
}

const TruncatedSeries& ThetaEngine::lift_at(std::size_t i, const Point& m, std::int64_t level) {
  Point cm = c_.canonical(m);
  auto key = std::make_tuple(i, cm, level);
  auto it = lifts_.find(key);
  if (it == lifts_.end()) {
    try {
      it = lifts_.emplace(key, lift(c_, d_, cm, level, samples_.at(i), cut_)).first;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::genericity) throw;
      resample(i);
      throw Redrawn{};
    }
  }
  return it->second;
}

ThetaExpansion ThetaEngine::single(const Point& m, std::int64_t level) const {
  ThetaExpansion e;
  e.level = level;
  e.coeffs[c_.canonical(m)] = Poly(Rational(1));
  return e;
}

ThetaExpansion ThetaEngine::decompose(const std::vector<TruncatedSeries>& targets, std::int64_t level) {
  const auto& pts = basis(level);
  int k = static_cast<int>(cut_.torder);
  int unknowns = static_cast<int>(pts.size()) * (k + 1);
  Eliminator el(unknowns);
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    int cell = samples_[i].cell;
    std::map<Exponent, SparseRow> rows;
    for (std::size_t b = 0; b < pts.size(); ++b) {
      const TruncatedSeries& l = lift_at(i, pts[b], level);
      for (int j = 0; j <= k; ++j) {
        for (const auto& [e, t] : l.terms()) {
          Exponent f = e + t_power(c_.dim + 2, c_.dim, j);
          if (c_.torder(cell, f) > Rational(k)) continue;
          rows[f][static_cast<int>(b) * (k + 1) + j] += t.coeff;
        }
      }
    }
    for (const auto& [e, t] : targets.at(i).terms()) {
      if (c_.torder(cell, e) > Rational(k)) continue;
      rows[e][unknowns] -= t.coeff;
    }
    for (auto& [e, r] : rows) {
      for (auto it = r.begin(); it != r.end();) it = it->second == 0 ? r.erase(it) : std::next(it);
      el.add(r);
    }
  }
  if (el.inconsistent()) fail(ErrorKind::inconsistent, "product is not a combination of theta functions at level " + std::to_string(level));
  if (!el.unique()) fail(ErrorKind::inconsistent, "theta basis at level " + std::to_string(level) + " is not determined by the samples");
  // Unknowns are written as A x + (-b) = 0, so the solution carries a sign.
  std::vector<Rational> x = el.solve();
  ThetaExpansion out;
  out.level = level;
  for (std::size_t b = 0; b < pts.size(); ++b) {
    Poly p;
    for (int j = 0; j <= k; ++j) p = p + Poly::monomial(-x[b * (k + 1) + j], j);
    if (!p.is_zero()) out.coeffs[pts[b]] = p;
  }
  return out;
}

ThetaExpansion ThetaEngine::multiply(const Point& m1, std::int64_t l1, const Point& m2, std::int64_t l2) {
  if (l1 <= 0 || l2 <= 0) fail(ErrorKind::domain, "levels must be positive");
  Point a = c_.canonical(m1), b = c_.canonical(m2);
  if (std::make_pair(b, l2) < std::make_pair(a, l1)) {
    std::swap(a, b);
    std::swap(l1, l2);
  }
  auto key = std::make_tuple(a, l1, b, l2);
  auto it = products_.find(key);
  if (it != products_.end()) return it->second;
  for (;;) {
    try {
      std::vector<TruncatedSeries> targets;
      for (std::size_t i = 0; i < samples_.size(); ++i)
        targets.push_back(widen(lift_at(i, a, l1)) * widen(lift_at(i, b, l2)));
      ThetaExpansion e = decompose(targets, l1 + l2);
      products_.emplace(key, e);
      return e;
    } catch (const Redrawn&) {
    }
  }
}

ThetaExpansion ThetaEngine::multiply(const ThetaExpansion& a, const ThetaExpansion& b) {
  ThetaExpansion out;
  out.level = a.level + b.level;
  int k = static_cast<int>(cut_.torder);
  std::map<Point, Poly> acc;
  for (const auto& [p, ca] : a.coeffs) {
    for (const auto& [q, cb] : b.coeffs) {
      Poly f = (ca * cb).truncated(k);
      if (f.is_zero()) continue;
      for (const auto& [r, cr] : multiply(p, a.level, q, b.level).coeffs) acc[r] = acc[r] + (f * cr).truncated(k);
    }
  }
  for (auto& [p, c] : acc)
    if (!c.is_zero()) out.coeffs[p] = c;
  return out;
}

std::optional<Exponent> theta_restrict(const ChartComplex& c, const Point& m, std::int64_t level, int cell) {
  for (const auto& rep : c.representatives(m))
    if (rep.cell == cell) return m_phi(c, rep, level).exponent;
  return std::nullopt;
}

namespace {

std::vector<std::vector<int>> monomials(int vars, int degree) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(vars, 0);
  auto rec = [&](auto& self, int i, int left) -> void {
    if (i == vars - 1) {
      cur[i] = left;
      out.push_back(cur);
      return;
    }
    for (int a = left; a >= 0; --a) {
      cur[i] = a;
      self(self, i + 1, left - a);
    }
  };
  if (vars > 0) rec(rec, 0, degree);
  return out;  // lexicographically descending
}

struct TermOrder {
  // Lower t-degree first, then lexicographically larger monomials.
  bool operator()(const std::pair<std::vector<int>, Poly>& a, const std::pair<std::vector<int>, Poly>& b) const {
    if (a.second.low_degree() != b.second.low_degree()) return a.second.low_degree() < b.second.low_degree();
    return a.first > b.first;
  }
};

std::string monomial_name(const std::vector<int>& e, const std::vector<std::string>& gens) {
  std::vector<std::pair<std::string, int>> parts;
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i] > 0) parts.push_back({gens[i], e[i]});
  std::sort(parts.begin(), parts.end());
  std::string out;
  for (const auto& [n, p] : parts) {
    if (!out.empty()) out += "*";
    out += n;
    if (p > 1) out += "^" + std::to_string(p);
  }
  return out.empty() ? "1" : out;
}

// "c*M" with sign handling; returns the sign separately.
std::pair<bool, std::string> scaled_term(const Poly& c, const std::string& mono) {
  bool neg = false;
  Poly p = c;
  if (!p.is_zero() && p.coeff(p.low_degree()) < 0) {
    neg = true;
    p = -p;
  }
  std::string cs;
  if (p == Poly(Rational(1))) cs = "";
  else if (p.num_terms() == 1) cs = p.to_string();
  else cs = "(" + p.to_string() + ")";
  if (mono == "1") return {neg, cs.empty() ? "1" : cs};
  return {neg, cs.empty() ? mono : cs + "*" + mono};
}

std::string join_terms(const std::vector<std::pair<bool, std::string>>& terms) {
  std::string out;
  for (const auto& [neg, s] : terms) {
    if (out.empty()) out = neg ? "-" + s : s;
    else out += (neg ? " - " : " + ") + s;
  }
  return out.empty() ? "0" : out;
}

std::vector<std::string> generator_names(const ChartComplex& c) {
  std::vector<std::string> out;
  for (const auto& n : c.label_order) {
    Point p = *c.label(n);
    for (const auto& x : p.x)
      if (!is_integer(x)) fail(ErrorKind::domain, "generator " + n + " is not an integral point");
    out.push_back(n);
  }
  if (out.empty()) fail(ErrorKind::domain, "scenario has no labelled generators");
  return out;
}

// Expansion of a generator monomial, built one factor at a time.
class MonomialTable {
 public:
  MonomialTable(ThetaEngine& e, std::vector<Point> gens) : e_(e), gens_(std::move(gens)) {}

  const ThetaExpansion& get(const std::vector<int>& mono) {
    auto it = cache_.find(mono);
    if (it != cache_.end()) return it->second;
    int last = -1, deg = 0;
    for (std::size_t i = 0; i < mono.size(); ++i) {
      deg += mono[i];
      if (mono[i] > 0) last = static_cast<int>(i);
    }
    ThetaExpansion v;
    if (deg == 1) {
      v = e_.single(gens_[last], 1);
    } else {
      std::vector<int> rest = mono;
      --rest[last];
      ThetaExpansion r = get(rest);
      v = e_.multiply(r, e_.single(gens_[last], 1));
    }
    return cache_.emplace(mono, v).first->second;
  }

 private:
  ThetaEngine& e_;
  std::vector<Point> gens_;
  std::map<std::vector<int>, ThetaExpansion> cache_;
};

// Left kernel rows of the matrix whose rows are the given expansions.
std::vector<std::vector<RatFunc>> left_kernel(const std::vector<ThetaExpansion>& rows, const std::vector<Point>& basis) {
  std::size_t nr = rows.size(), nc = basis.size();
  std::map<Point, std::size_t> col;
  for (std::size_t j = 0; j < nc; ++j) col[basis[j]] = j;
  std::vector<std::vector<RatFunc>> mt(nc, std::vector<RatFunc>(nr));
  for (std::size_t i = 0; i < nr; ++i)
    for (const auto& [p, c] : rows[i].coeffs) mt[col.at(p)][i] = RatFunc(c);
  std::vector<int> piv = rref(mt);
  std::vector<bool> is_piv(nr, false);
  for (int p : piv) is_piv[p] = true;
  std::vector<std::vector<RatFunc>> ker;
  for (std::size_t f = 0; f < nr; ++f) {
    if (is_piv[f]) continue;
    std::vector<RatFunc> v(nr);
    v[f] = RatFunc(Poly(Rational(1)));
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = RatFunc() - mt[r][f];
    ker.push_back(v);
  }
  return ker;
}

std::size_t rank_of(std::vector<std::vector<RatFunc>> m) { return rref(m).size(); }

Relation to_relation(const std::vector<RatFunc>& v, const std::vector<std::vector<int>>& monos, int degree, int k) {
  Poly l(Rational(1));
  for (const auto& x : v) {
    if (x.is_zero()) continue;
    Poly g = gcd(l, x.den()), q;
    (l * x.den()).divmod(g, &q, nullptr);
    l = q;
  }
  std::vector<Poly> polys;
  Poly g;
  for (const auto& x : v) {
    Poly q;
    (x.num() * l).divmod(x.den(), &q, nullptr);
    polys.push_back(q);
    if (!q.is_zero()) g = g.is_zero() ? q.monic() : gcd(g, q);
  }
  Relation r;
  r.degree = degree;
  // The term printed first gets lowest coefficient 1.
  std::optional<std::pair<std::vector<int>, Poly>> first;
  for (std::size_t i = 0; i < polys.size(); ++i) {
    if (polys[i].is_zero()) continue;
    Poly q;
    polys[i].divmod(g, &q, nullptr);
    polys[i] = q;
    std::pair<std::vector<int>, Poly> term{monos[i], polys[i]};
    if (!first || TermOrder()(term, *first)) first = term;
  }
  if (!first) return r;
  Poly scale(1 / first->second.coeff(first->second.low_degree()));
  for (std::size_t i = 0; i < polys.size(); ++i) {
    if (polys[i].is_zero()) continue;
    Poly q = (polys[i] * scale).truncated(k);
    if (!q.is_zero()) r.terms[monos[i]] = q;
  }
  return r;
}

}  // namespace

RelationSet find_relations(ThetaEngine& engine, int max_degree) {
  const ChartComplex& c = engine.complex();
  RelationSet out;
  out.generators = generator_names(c);
  std::vector<Point> gens;
  for (const auto& n : out.generators) gens.push_back(c.canonical(*c.label(n)));
  int ng = static_cast<int>(gens.size());
  int k = static_cast<int>(engine.cutoffs().torder);
  MonomialTable table(engine, gens);
  std::vector<std::vector<RatFunc>> prev_kernel;
  std::vector<std::vector<int>> prev_monos;
  for (int deg = 2; deg <= max_degree; ++deg) {
    auto monos = monomials(ng, deg);
    std::map<std::vector<int>, std::size_t> index;
    for (std::size_t i = 0; i < monos.size(); ++i) index[monos[i]] = i;
    std::vector<ThetaExpansion> rows;
    for (const auto& m : monos) rows.push_back(table.get(m));
    auto ker = left_kernel(rows, engine.basis(deg));
    // Canonical echelon form in printing order (monomials are lex-descending).
    auto canon = ker;
    rref(canon);
    // Multiples of lower-degree relations.
    std::vector<std::vector<RatFunc>> span;
    for (const auto& v : prev_kernel) {
      for (int g = 0; g < ng; ++g) {
        std::vector<RatFunc> w(monos.size());
        for (std::size_t i = 0; i < v.size(); ++i) {
          if (v[i].is_zero()) continue;
          auto m = prev_monos[i];
          ++m[g];
          w[index.at(m)] = v[i];
        }
        span.push_back(w);
      }
    }
    std::size_t base = rank_of(span);
    for (const auto& row : canon) {
      auto trial = span;
      trial.push_back(row);
      std::size_t r = rank_of(trial);
      if (r == base) continue;
      span.push_back(row);
      base = r;
      out.relations.push_back(to_relation(row, monos, deg, k));
    }
    prev_kernel = ker;
    prev_monos = monos;
  }
  return out;
}

std::string format_relation(const Relation& r, const std::vector<std::string>& generators) {
  std::vector<std::pair<std::vector<int>, Poly>> terms(r.terms.begin(), r.terms.end());
  std::sort(terms.begin(), terms.end(), TermOrder());
  std::vector<std::pair<bool, std::string>> parts;
  for (const auto& [m, c] : terms) parts.push_back(scaled_term(c, monomial_name(m, generators)));
  return join_terms(parts) + " = 0";
}

namespace {

// Generator exponent vector whose average (in one cell) is m; the largest
// in label order when there are several.
// Every point a generator monomial of this degree averages to inside one cell.
std::map<std::vector<int>, std::set<Point>> monomial_points(const ChartComplex& c, std::int64_t level) {
  std::size_t ng = c.label_order.size();
  std::map<std::vector<int>, std::set<Point>> out;
  for (int cell = 0; cell < static_cast<int>(c.cells.size()); ++cell) {
    std::vector<std::pair<int, Coords>> here;
    for (std::size_t g = 0; g < ng; ++g)
      for (const auto& r : c.representatives(*c.label(c.label_order[g])))
        if (r.cell == cell) here.push_back({static_cast<int>(g), r.x});
    if (here.empty()) continue;
    for (const auto& choice : monomials(static_cast<int>(here.size()), static_cast<int>(level))) {
      Coords sum(c.dim, Rational(0));
      std::vector<int> e(ng, 0);
      for (std::size_t i = 0; i < here.size(); ++i) {
        if (choice[i] == 0) continue;
        for (int a = 0; a < c.dim; ++a) sum[a] += here[i].second[a] * choice[i];
        e[here[i].first] += choice[i];
      }
      for (auto& x : sum) x /= Rational(static_cast<long>(level));
      out[e].insert(c.canonical(Point{cell, sum}));
    }
  }
  return out;
}

// The largest monomial naming m and nothing else.
std::optional<std::vector<int>> basis_monomial(const ChartComplex& c, const Point& m, std::int64_t level) {
  Point cm = c.canonical(m);
  std::optional<std::vector<int>> best;
  for (const auto& [e, pts] : monomial_points(c, level))
    if (pts.size() == 1 && *pts.begin() == cm) best = e;
  return best;
}

}  // namespace

std::string basis_name(const ChartComplex& c, const Point& m, std::int64_t level) {
  if (auto e = basis_monomial(c, m, level)) return monomial_name(*e, c.label_order);
  return "theta[" + std::to_string(level) + "]" + to_string(c.canonical(m));
}

std::string format_product(const ChartComplex& c, const std::string& lhs, const ThetaExpansion& e) {
  struct Item {
    int tdeg;
    std::optional<std::vector<int>> mono;
    std::string name;
    Poly coeff;
  };
  std::vector<Item> items;
  for (const auto& [p, coeff] : e.coeffs)
    items.push_back({coeff.low_degree(), basis_monomial(c, p, e.level), basis_name(c, p, e.level), coeff});
  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    if (a.tdeg != b.tdeg) return a.tdeg < b.tdeg;
    if (a.mono.has_value() != b.mono.has_value()) return a.mono.has_value();
    if (a.mono && *a.mono != *b.mono) return *a.mono > *b.mono;
    return a.name < b.name;
  });
  std::vector<std::pair<bool, std::string>> parts;
  for (const auto& it : items) parts.push_back(scaled_term(it.coeff, it.name));
  return lhs + " = " + join_terms(parts);
}

namespace {

using GenPoly = std::map<std::vector<int>, Poly>;

GenPoly gp_mul(const GenPoly& a, const GenPoly& b) {
  GenPoly out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      std::vector<int> e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out[e] = out[e] + ca * cb;
    }
  return out;
}

GenPoly gp_add(GenPoly a, const GenPoly& b, const Rational& sign) {
  for (const auto& [e, c] : b) a[e] = a[e] + c * Poly(sign);
  return a;
}

class RelationParser {
 public:
  RelationParser(const std::string& text, const std::vector<std::string>& gens) : s_(text), gens_(gens) {}

  GenPoly parse() {
    GenPoly lhs = expr();
    if (eat('=')) {
      GenPoly rhs = expr();
      lhs = gp_add(lhs, rhs, Rational(-1));
    }
    skip();
    if (i_ != s_.size()) bad("unexpected '" + std::string(1, s_[i_]) + "'");
    return lhs;
  }

 private:
  [[noreturn]] void bad(const std::string& why) const {
    fail(ErrorKind::parse, "relation \"" + s_ + "\": " + why);
  }

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  bool eat(char ch) {
    skip();
    if (i_ < s_.size() && s_[i_] == ch) {
      ++i_;
      return true;
    }
    return false;
  }

  GenPoly constant(const Poly& p) const { return {{std::vector<int>(gens_.size(), 0), p}}; }

  GenPoly expr() {
    GenPoly out;
    Rational sign(1);
    if (eat('-')) sign = Rational(-1);
    else eat('+');
    out = gp_add(out, term(), sign);
    for (;;) {
      if (eat('+')) out = gp_add(out, term(), Rational(1));
      else if (eat('-')) out = gp_add(out, term(), Rational(-1));
      else return out;
    }
  }

  bool factor_follows() {
    skip();
    if (i_ >= s_.size()) return false;
    char ch = s_[i_];
    return ch == '(' || std::isalnum(static_cast<unsigned char>(ch));
  }

  GenPoly term() {
    GenPoly out = factor();
    for (;;) {
      if (eat('*')) out = gp_mul(out, factor());
      else if (factor_follows()) out = gp_mul(out, factor());
      else return out;
    }
  }

  long power() {
    if (!eat('^')) return 1;
    skip();
    std::size_t j = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (j == i_) bad("exponent expected");
    return std::stol(s_.substr(j, i_ - j));
  }

  GenPoly single(const std::string& name) const {
    if (name == "t") return constant(Poly::monomial(Rational(1), 1));
    auto it = std::find(gens_.begin(), gens_.end(), name);
    if (it == gens_.end()) return {};
    std::vector<int> e(gens_.size(), 0);
    e[it - gens_.begin()] = 1;
    return {{e, Poly(Rational(1))}};
  }

  GenPoly pow(const GenPoly& f, long k) const {
    GenPoly out = constant(Poly(Rational(1)));
    for (long j = 0; j < k; ++j) out = gp_mul(out, f);
    return out;
  }

  GenPoly factor() {
    skip();
    if (i_ >= s_.size()) bad("unexpected end");
    char ch = s_[i_];
    if (ch == '(') {
      ++i_;
      GenPoly inner = expr();
      if (!eat(')')) bad("')' expected");
      return pow(inner, power());
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t j = i_;
      while (i_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[i_])) || s_[i_] == '/')) ++i_;
      return constant(Poly(parse_rational(s_.substr(j, i_ - j))));
    }
    if (!std::isalpha(static_cast<unsigned char>(ch))) bad("unexpected '" + std::string(1, ch) + "'");
    std::size_t j = i_;
    while (i_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[i_]))) ++i_;
    std::string word = s_.substr(j, i_ - j);
    GenPoly f = single(word);
    if (f.empty()) {
      // Juxtaposed one-letter names, the power binding to the last one.
      f = constant(Poly(Rational(1)));
      for (char c : word) {
        GenPoly g = single(std::string(1, c));
        if (g.empty()) bad("unknown generator " + word);
        f = gp_mul(f, g);
      }
      long k = power();
      GenPoly last = single(std::string(1, word.back()));
      return gp_mul(f, pow(last, k - 1));
    }
    return pow(f, power());
  }

  std::string s_;
  const std::vector<std::string>& gens_;
  std::size_t i_ = 0;
};

int total_degree(const std::vector<int>& e) {
  int d = 0;
  for (int v : e) d += v;
  return d;
}

std::size_t span_rank(const std::vector<const Relation*>& rs, const std::vector<std::vector<int>>& cols) {
  std::vector<std::vector<RatFunc>> a;
  for (const auto* r : rs) {
    std::vector<RatFunc> row;
    for (const auto& m : cols) {
      auto it = r->terms.find(m);
      row.push_back(it == r->terms.end() ? RatFunc() : RatFunc(it->second));
    }
    a.push_back(row);
  }
  return rref(a).size();
}

}  // namespace

Relation parse_relation(const std::string& text, const std::vector<std::string>& generators) {
  GenPoly g = RelationParser(text, generators).parse();
  Relation r;
  for (const auto& [e, c] : g) {
    if (c.is_zero()) continue;
    int d = total_degree(e);
    if (!r.terms.empty() && d != r.degree) fail(ErrorKind::parse, "relation \"" + text + "\" is not homogeneous");
    r.degree = d;
    r.terms[e] = c;
  }
  if (r.terms.empty()) fail(ErrorKind::parse, "relation \"" + text + "\" is zero");
  return r;
}

bool same_relations(const std::vector<Relation>& a, const std::vector<Relation>& b) {
  std::map<int, std::pair<std::vector<const Relation*>, std::vector<const Relation*>>> by_degree;
  for (const auto& r : a) by_degree[r.degree].first.push_back(&r);
  for (const auto& r : b) by_degree[r.degree].second.push_back(&r);
  for (const auto& [deg, sides] : by_degree) {
    const auto& [x, y] = sides;
    if (x.size() != y.size()) return false;
    std::set<std::vector<int>> keys;
    for (const auto* r : x) for (const auto& kv : r->terms) keys.insert(kv.first);
    for (const auto* r : y) for (const auto& kv : r->terms) keys.insert(kv.first);
    std::vector<std::vector<int>> cols(keys.begin(), keys.end());
    std::vector<const Relation*> both = x;
    both.insert(both.end(), y.begin(), y.end());
    std::size_t rx = span_rank(x, cols), ry = span_rank(y, cols);
    if (rx != x.size() || ry != y.size() || span_rank(both, cols) != rx) return false;
  }
  return true;
}

}  // namespace jag
