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

#ifndef JAGGED_GEOMETRY_HPP
#define JAGGED_GEOMETRY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "jagged/rational.hpp"

namespace jag {

// Chart coordinates of a point, of length 1 or 2.
using Coords = std::vector<Rational>;

std::string to_string(const Coords& x);

struct Vec2 {
  Rational x, y;

  Vec2() = default;
  Vec2(Rational a, Rational b) : x(std::move(a)), y(std::move(b)) {}
  explicit Vec2(const Coords& c);
  Coords coords() const { return {x, y}; }

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(const Rational& s) const { return {x * s, y * s}; }
  bool operator==(const Vec2& o) const { return x == o.x && y == o.y; }
  bool operator!=(const Vec2& o) const { return !(*this == o); }
  bool operator<(const Vec2& o) const { return x < o.x || (x == o.x && y < o.y); }
};

inline Rational cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline Rational dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }

// Intersection of the lines p + s*u and q + r*v, or nothing when parallel.
std::optional<Vec2> intersect_lines(const Vec2& p, const Vec2& u, const Vec2& q, const Vec2& v);

// Parameter s with a + s*(b-a) = p, assuming p on the line through a, b.
Rational line_param(const Vec2& a, const Vec2& b, const Vec2& p);

// Closed parameter interval [lo, hi] on a segment.
struct Interval {
  Rational lo, hi;
  bool empty() const { return lo > hi; }
  bool degenerate() const { return lo >= hi; }
  bool contains_open(const Rational& s) const { return lo < s && s < hi; }
};

// Restrict `iv` (a parameter range on the segment a->b) to the points p with
// side * cross(dir, p - base) >= 0.
Interval clip_halfplane(const Vec2& a, const Vec2& b, Interval iv, const Vec2& base,
                        const Vec2& dir, int side);

// Integral affine map x -> m x + t, dimension 1 or 2, m row-major.
struct AffineFn;

struct AffineMap {
  int dim = 2;
  std::vector<std::int64_t> m;
  std::vector<std::int64_t> t;

  static AffineMap identity(int dim);
  std::int64_t det() const;
  Coords apply(const Coords& x) const;
  Coords apply_linear(const Coords& v) const;
  std::vector<std::int64_t> apply_linear(const std::vector<std::int64_t>& v) const;
  Vec2 apply(const Vec2& x) const { return Vec2(apply(x.coords())); }
  Vec2 apply_linear(const Vec2& v) const { return Vec2(apply_linear(v.coords())); }
  AffineMap inverse() const;
  // next after this.
  AffineMap then(const AffineMap& next) const;
  AffineFn pullback(const AffineFn& f) const;
  bool operator==(const AffineMap& o) const { return dim == o.dim && m == o.m && t == o.t; }
  std::string to_string() const;
};

// Affine function x -> slope.x + constant.
struct AffineFn {
  std::vector<Rational> slope;
  Rational constant;

  static AffineFn zero(int dim) { return {std::vector<Rational>(dim, Rational(0)), 0}; }
  Rational operator()(const Coords& x) const;
  Rational operator()(const Vec2& x) const { return (*this)(x.coords()); }
  // Pairing with a dual affine element (u, d), i.e. slope.u + constant*d.
  Rational pair(const std::vector<std::int64_t>& u, std::int64_t d) const;
  AffineFn operator+(const AffineFn& o) const;
  AffineFn operator-(const AffineFn& o) const;
  AffineFn scaled(const Rational& c) const;
  bool is_zero() const;
  bool operator==(const AffineFn& o) const { return slope == o.slope && constant == o.constant; }
};

}  // namespace jag

#endif  // JAGGED_GEOMETRY_HPP
