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

#include "jagged/poly.hpp"

#include <algorithm>

#include "jagged/error.hpp"

namespace jag {

Poly::Poly(const Rational& c) {
  if (c != 0) c_.push_back(c);
}

Poly Poly::monomial(const Rational& c, int degree) {
  Poly p;
  if (c == 0) return p;
  p.c_.assign(degree + 1, Rational(0));
  p.c_[degree] = c;
  return p;
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational Poly::coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : Rational(0); }

int Poly::low_degree() const {
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != 0) return static_cast<int>(i);
  return -1;
}

int Poly::num_terms() const {
  return static_cast<int>(std::count_if(c_.begin(), c_.end(), [](const Rational& r) { return r != 0; }));
}

Poly Poly::operator+(const Poly& o) const {
  Poly r;
  r.c_.assign(std::max(c_.size(), o.c_.size()), Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r.c_[i] += o.c_[i];
  r.trim();
  return r;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  Poly r;
  if (is_zero() || o.is_zero()) return r;
  r.c_.assign(c_.size() + o.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) r.c_[i + j] += c_[i] * o.c_[j];
  r.trim();
  return r;
}

Poly Poly::truncated(int k) const {
  Poly r = *this;
  if (static_cast<int>(r.c_.size()) > k + 1) r.c_.resize(k + 1);
  r.trim();
  return r;
}

void Poly::divmod(const Poly& d, Poly* q, Poly* r) const {
  if (d.is_zero()) fail(ErrorKind::domain, "polynomial division by zero");
  Poly quo, rem = *this;
  while (!rem.is_zero() && rem.degree() >= d.degree()) {
    int shift = rem.degree() - d.degree();
    Poly t = monomial(rem.lead() / d.lead(), shift);
    quo = quo + t;
    rem = rem - t * d;
  }
  if (q) *q = quo;
  if (r) *r = rem;
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  Poly r = *this;
  Rational l = lead();
  for (auto& x : r.c_) x /= l;
  return r;
}

std::string Poly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    Rational a = c_[i];
    bool neg = a < 0;
    if (neg) a = -a;
    if (out.empty()) out += neg ? "-" : "";
    else out += neg ? " - " : " + ";
    std::string mono = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
    if (mono.empty()) out += jag::to_string(a);
    else if (a == 1) out += mono;
    else out += jag::to_string(a) + "*" + mono;
  }
  return out;
}

Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r;
    a.divmod(b, nullptr, &r);
    a = b;
    b = r;
  }
  return a.monic();
}

RatFunc::RatFunc(const Poly& n) : num_(n), den_(Rational(1)) {}

RatFunc::RatFunc(const Poly& n, const Poly& d) {
  if (d.is_zero()) fail(ErrorKind::domain, "rational function with zero denominator");
  if (n.is_zero()) {
    den_ = Poly(Rational(1));
    return;
  }
  Poly g = gcd(n, d);
  Poly nn, dd;
  n.divmod(g, &nn, nullptr);
  d.divmod(g, &dd, nullptr);
  Rational l = dd.lead();
  num_ = nn * Poly(1 / l);
  den_ = dd * Poly(1 / l);
}

RatFunc RatFunc::operator+(const RatFunc& o) const { return {num_ * o.den_ + o.num_ * den_, den_ * o.den_}; }
RatFunc RatFunc::operator-(const RatFunc& o) const { return {num_ * o.den_ - o.num_ * den_, den_ * o.den_}; }
RatFunc RatFunc::operator*(const RatFunc& o) const { return {num_ * o.num_, den_ * o.den_}; }
RatFunc RatFunc::operator/(const RatFunc& o) const {
  if (o.is_zero()) fail(ErrorKind::domain, "division by zero rational function");
  return {num_ * o.den_, den_ * o.num_};
}

}  // namespace jag
