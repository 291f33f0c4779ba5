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

#include "jagged/geometry.hpp"

#include "jagged/error.hpp"

namespace jag {

std::string to_string(const Coords& x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) s += ",";
    s += to_string(x[i]);
  }
  return s + ")";
}

Vec2::Vec2(const Coords& c) {
  if (c.size() != 2) fail(ErrorKind::config, "expected planar coordinates");
  x = c[0];
  y = c[1];
}

std::optional<Vec2> intersect_lines(const Vec2& p, const Vec2& u, const Vec2& q, const Vec2& v) {
  Rational den = cross(u, v);
  if (den == 0) return std::nullopt;
  Rational s = cross(q - p, v) / den;
  return p + u * s;
}

Rational line_param(const Vec2& a, const Vec2& b, const Vec2& p) {
  Vec2 d = b - a;
  if (d.x != 0) return (p.x - a.x) / d.x;
  return (p.y - a.y) / d.y;
}

Interval clip_halfplane(const Vec2& a, const Vec2& b, Interval iv, const Vec2& base,
                        const Vec2& dir, int side) {
  // f(s) = side * cross(dir, a + s(b-a) - base) is affine in s.
  Rational f0 = cross(dir, a - base) * side;
  Rational f1 = cross(dir, b - base) * side;
  Rational slope = f1 - f0;
  if (slope == 0) {
    if (f0 < 0) return {1, 0};
    return iv;
  }
  Rational root = -f0 / slope;
  if (slope > 0) {
    if (root > iv.lo) iv.lo = root;
  } else {
    if (root < iv.hi) iv.hi = root;
  }
  return iv;
}

AffineMap AffineMap::identity(int dim) {
  AffineMap a;
  a.dim = dim;
  a.m.assign(dim * dim, 0);
  for (int i = 0; i < dim; ++i) a.m[i * dim + i] = 1;
  a.t.assign(dim, 0);
  return a;
}

std::int64_t AffineMap::det() const {
  if (dim == 1) return m[0];
  return m[0] * m[3] - m[1] * m[2];
}

Coords AffineMap::apply_linear(const Coords& v) const {
  Coords r(dim, Rational(0));
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) r[i] += Rational(static_cast<long>(m[i * dim + j])) * v[j];
  return r;
}

std::vector<std::int64_t> AffineMap::apply_linear(const std::vector<std::int64_t>& v) const {
  std::vector<std::int64_t> r(dim, 0);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) r[i] += m[i * dim + j] * v[j];
  return r;
}

Coords AffineMap::apply(const Coords& x) const {
  Coords r = apply_linear(x);
  for (int i = 0; i < dim; ++i) r[i] += Rational(static_cast<long>(t[i]));
  return r;
}

AffineMap AffineMap::inverse() const {
  std::int64_t d = det();
  if (d != 1 && d != -1) fail(ErrorKind::validation, "affine map is not invertible over the integers");
  AffineMap r;
  r.dim = dim;
  if (dim == 1) {
    r.m = {m[0]};
  } else {
    r.m = {m[3] * d, -m[1] * d, -m[2] * d, m[0] * d};
  }
  auto lt = r.apply_linear(t);
  r.t.resize(dim);
  for (int i = 0; i < dim; ++i) r.t[i] = -lt[i];
  return r;
}

AffineMap AffineMap::then(const AffineMap& next) const {
  AffineMap r;
  r.dim = dim;
  r.m.assign(dim * dim, 0);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k) r.m[i * dim + j] += next.m[i * dim + k] * m[k * dim + j];
  r.t = next.apply_linear(t);
  for (int i = 0; i < dim; ++i) r.t[i] += next.t[i];
  return r;
}

AffineFn AffineMap::pullback(const AffineFn& f) const {
  AffineFn r;
  r.slope.assign(dim, Rational(0));
  for (int j = 0; j < dim; ++j)
    for (int i = 0; i < dim; ++i) r.slope[j] += f.slope[i] * Rational(static_cast<long>(m[i * dim + j]));
  r.constant = f.constant;
  for (int i = 0; i < dim; ++i) r.constant += f.slope[i] * Rational(static_cast<long>(t[i]));
  return r;
}

std::string AffineMap::to_string() const {
  std::string s = "[";
  for (int i = 0; i < dim; ++i) {
    if (i) s += ",";
    s += "[";
    for (int j = 0; j < dim; ++j) {
      if (j) s += ",";
      s += std::to_string(m[i * dim + j]);
    }
    s += "]";
  }
  s += "]+(";
  for (int i = 0; i < dim; ++i) {
    if (i) s += ",";
    s += std::to_string(t[i]);
  }
  return s + ")";
}

Rational AffineFn::operator()(const Coords& x) const {
  Rational r = constant;
  for (std::size_t i = 0; i < slope.size(); ++i) r += slope[i] * x[i];
  return r;
}

Rational AffineFn::pair(const std::vector<std::int64_t>& u, std::int64_t d) const {
  Rational r = constant * Rational(static_cast<long>(d));
  for (std::size_t i = 0; i < slope.size(); ++i) r += slope[i] * Rational(static_cast<long>(u[i]));
  return r;
}

AffineFn AffineFn::operator+(const AffineFn& o) const {
  AffineFn r = *this;
  for (std::size_t i = 0; i < slope.size(); ++i) r.slope[i] += o.slope[i];
  r.constant += o.constant;
  return r;
}

AffineFn AffineFn::operator-(const AffineFn& o) const { return *this + o.scaled(-1); }

AffineFn AffineFn::scaled(const Rational& c) const {
  AffineFn r = *this;
  for (auto& s : r.slope) s *= c;
  r.constant *= c;
  return r;
}

bool AffineFn::is_zero() const {
  for (const auto& s : slope)
    if (s != 0) return false;
  return constant == 0;
}

}  // namespace jag
