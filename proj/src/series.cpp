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

#include "jagged/series.hpp"

#include <sstream>

#include "jagged/error.hpp"

namespace jag {

Exponent operator+(const Exponent& a, const Exponent& b) {
  Exponent r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

Exponent operator-(const Exponent& a, const Exponent& b) {
  Exponent r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

Exponent scaled(const Exponent& a, std::int64_t n) {
  Exponent r(a);
  for (auto& x : r) x *= n;
  return r;
}

std::string to_string(const Exponent& e) {
  std::string s = "(";
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(e[i]);
  }
  return s + ")";
}

Rational AlgebraSpec::torder(const Exponent& e) const {
  Rational r = 0;
  for (int i = 0; i < rank; ++i)
    if (torder_weights[i] != 0) r += torder_weights[i] * e[i];
  return r;
}

bool AlgebraSpec::admits(const Exponent& e, int length) const {
  if (length > length_cutoff) return false;
  if (box) {
    for (int i = 0; i < rank; ++i)
      if (e[i] > (*box)[i]) return false;
  }
  return torder(e) <= torder_cutoff;
}

bool AlgebraSpec::operator==(const AlgebraSpec& o) const {
  return rank == o.rank && torder_cutoff == o.torder_cutoff &&
         length_cutoff == o.length_cutoff && torder_weights == o.torder_weights &&
         box == o.box;
}

AlgebraPtr make_algebra(int rank, std::int64_t torder_cutoff, int length_cutoff,
                        std::vector<Rational> torder_weights,
                        std::optional<std::vector<std::int64_t>> box) {
  if (rank <= 0) fail(ErrorKind::config, "algebra rank must be positive");
  if (static_cast<int>(torder_weights.size()) != rank)
    fail(ErrorKind::config, "t-order functional has wrong rank");
  if (box && static_cast<int>(box->size()) != rank)
    fail(ErrorKind::config, "component bound has wrong rank");
  auto spec = std::make_shared<AlgebraSpec>();
  spec->rank = rank;
  spec->torder_cutoff = torder_cutoff;
  spec->length_cutoff = length_cutoff;
  spec->torder_weights = std::move(torder_weights);
  spec->box = std::move(box);
  return spec;
}

TruncatedSeries::TruncatedSeries(AlgebraPtr algebra) : algebra_(std::move(algebra)) {
  if (!algebra_) fail(ErrorKind::config, "series without algebra");
}

TruncatedSeries TruncatedSeries::zero(AlgebraPtr algebra) {
  return TruncatedSeries(std::move(algebra));
}

TruncatedSeries TruncatedSeries::one(AlgebraPtr algebra) {
  Exponent e(algebra->rank, 0);
  return monomial(std::move(algebra), e, 1, 0);
}

TruncatedSeries TruncatedSeries::monomial(AlgebraPtr algebra, const Exponent& e,
                                          const Rational& coeff, int length) {
  TruncatedSeries s(std::move(algebra));
  s.add_term(e, coeff, length);
  return s;
}

Rational TruncatedSeries::coeff(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second.coeff;
}

Rational TruncatedSeries::constant_term() const {
  return coeff(Exponent(algebra_->rank, 0));
}

void TruncatedSeries::add_term(const Exponent& e, const Rational& c, int length) {
  if (static_cast<int>(e.size()) != algebra_->rank)
    fail(ErrorKind::config, "exponent rank mismatch: " + jag::to_string(e));
  if (c == 0 || !algebra_->admits(e, length)) return;
  auto [it, inserted] = terms_.try_emplace(e, Term{c, length});
  if (inserted) return;
  it->second.coeff += c;
  if (length < it->second.length) it->second.length = length;
  if (it->second.coeff == 0) terms_.erase(it);
}

void TruncatedSeries::check_compatible(const TruncatedSeries& other) const {
  if (algebra_ != other.algebra_ && !(*algebra_ == *other.algebra_))
    fail(ErrorKind::config, "series belong to different algebras");
}

TruncatedSeries TruncatedSeries::operator+(const TruncatedSeries& other) const {
  check_compatible(other);
  TruncatedSeries r(*this);
  for (const auto& [e, t] : other.terms_) r.add_term(e, t.coeff, t.length);
  return r;
}

TruncatedSeries TruncatedSeries::operator-(const TruncatedSeries& other) const {
  check_compatible(other);
  TruncatedSeries r(*this);
  for (const auto& [e, t] : other.terms_) r.add_term(e, -t.coeff, t.length);
  return r;
}

TruncatedSeries TruncatedSeries::operator*(const TruncatedSeries& other) const {
  check_compatible(other);
  TruncatedSeries r(algebra_);
  for (const auto& [ea, ta] : terms_) {
    for (const auto& [eb, tb] : other.terms_) {
      r.add_term(ea + eb, ta.coeff * tb.coeff, ta.length + tb.length);
    }
  }
  return r;
}

TruncatedSeries TruncatedSeries::scaled(const Rational& c) const {
  TruncatedSeries r(algebra_);
  if (c == 0) return r;
  for (const auto& [e, t] : terms_) r.terms_.emplace(e, Term{t.coeff * c, t.length});
  return r;
}

bool TruncatedSeries::operator==(const TruncatedSeries& other) const {
  if (terms_.size() != other.terms_.size()) return false;
  auto a = terms_.begin();
  auto b = other.terms_.begin();
  for (; a != terms_.end(); ++a, ++b) {
    if (a->first != b->first || a->second.coeff != b->second.coeff) return false;
  }
  return true;
}

std::string TruncatedSeries::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, t] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << jag::to_string(t.coeff) << "*z^" << jag::to_string(e);
  }
  return os.str();
}

namespace {

// Every non-constant term must raise the t-order or the length, or the
// algebra must carry a component bound; otherwise powers never vanish.
bool nilpotent_part(const TruncatedSeries& u) {
  const auto& alg = u.algebra();
  if (alg.box) return true;
  for (const auto& [e, t] : u.terms()) {
    if (t.length == 0 && alg.torder(e) <= 0) return false;
  }
  return true;
}

// Sum of c_j u^j for j >= 1 until u^j vanishes.
template <class CoeffFn>
TruncatedSeries power_sum(const TruncatedSeries& u, CoeffFn coeff_of) {
  TruncatedSeries acc = TruncatedSeries::zero(u.algebra_ptr());
  TruncatedSeries power = u;
  for (std::int64_t j = 1; !power.is_zero(); ++j) {
    acc = acc + power.scaled(coeff_of(j));
    power = power * u;
  }
  return acc;
}

}  // namespace

TruncatedSeries series_pow(const TruncatedSeries& a, std::int64_t n) {
  if (n == 0) return TruncatedSeries::one(a.algebra_ptr());
  if (n > 0) {
    TruncatedSeries result = TruncatedSeries::one(a.algebra_ptr());
    TruncatedSeries base = a;
    for (std::int64_t m = n; m > 0; m >>= 1) {
      if (m & 1) result = result * base;
      if (m > 1) base = base * base;
    }
    return result;
  }
  Rational c0 = a.constant_term();
  if (c0 == 0) fail(ErrorKind::non_invertible, "negative power of a series with zero constant term");
  TruncatedSeries u = a.scaled(1 / c0) - TruncatedSeries::one(a.algebra_ptr());
  if (!nilpotent_part(u))
    fail(ErrorKind::non_invertible, "series is not a unit under the truncation");
  // (1+u)^{-1} = sum (-u)^j
  TruncatedSeries inv =
      TruncatedSeries::one(a.algebra_ptr()) +
      power_sum(u, [](std::int64_t j) { return Rational(j % 2 ? -1 : 1); });
  inv = inv.scaled(1 / c0);
  return series_pow(inv, -n);
}

TruncatedSeries series_log(const TruncatedSeries& a) {
  if (a.constant_term() != 1) fail(ErrorKind::domain, "log needs constant term 1");
  TruncatedSeries u = a - TruncatedSeries::one(a.algebra_ptr());
  if (!nilpotent_part(u)) fail(ErrorKind::domain, "log argument is not unipotent under the truncation");
  return power_sum(u, [](std::int64_t j) {
    Rational c(j % 2 ? 1 : -1, j);
    c.canonicalize();
    return c;
  });
}

std::vector<Rational> normalize_central_function(int k) {
  if (k < 0) fail(ErrorKind::domain, "order must be non-negative");
  std::vector<Rational> g;
  for (int l = 1; l <= k; ++l) {
    // Only exponents inside the box [0,l]^3 can reach (l,l,l).
    auto alg = make_algebra(3, 3 * l, 3 * l, {1, 1, 1},
                            std::vector<std::int64_t>{l, l, l});
    TruncatedSeries f = TruncatedSeries::one(alg);
    for (int i = 0; i < 3; ++i) {
      Exponent e(3, 0);
      e[i] = 1;
      f.add_term(e, 1, 1);
    }
    for (int j = 1; j < l; ++j) f.add_term(Exponent{j, j, j}, g[j - 1], j);
    Rational c = series_log(f).coeff(Exponent{l, l, l});
    // g_l (xyz)^l enters log f linearly at order l.
    g.push_back(-c);
  }
  return g;
}

}  // namespace jag
