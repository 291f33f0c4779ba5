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

#ifndef JAGGED_STRUCTURE_HPP
#define JAGGED_STRUCTURE_HPP

#include <string>
#include <vector>

#include "json.hpp"
#include "jagged/complex.hpp"
#include "jagged/series.hpp"

namespace jag {

// One monomial c z^p of a wall function. The exponent is a degree-zero
// P-tilde exponent in some cell chart; `length` counts wall monomials.
struct WallTerm {
  Rational coeff;
  Exponent exponent;
  int length = 1;
};

struct Ray {
  std::string name;
  Point base;
  std::vector<std::int64_t> direction;  // primitive, in the base chart
  bool bounded = false;
  Rational extent;  // parameter of the endpoint when bounded
  // Non-constant terms; exponents are P-tilde in the base chart.
  std::vector<WallTerm> function;
};

// The part of a ray inside one closed cell.
struct RayPiece {
  int ray = 0;
  int cell = 0;
  Vec2 a, b;      // start and end in the cell chart, a -> b along the ray
  int edge = -1;  // edge of the cell containing the piece, or -1
  std::vector<WallTerm> function;
};

class Structure {
 public:
  std::vector<Ray> rays;

  // Traces every ray through the complex. Must be called after editing rays.
  void trace(const ChartComplex& c);
  const std::vector<RayPiece>& pieces() const { return pieces_; }
  std::vector<const RayPiece*> pieces_in(int cell) const;
  int find(const std::string& name) const;

  Structure without(const std::string& name, const ChartComplex& c) const;

 private:
  std::vector<RayPiece> pieces_;
};

Structure structure_from_json(const nlohmann::json& doc, const ChartComplex& c);

// Primitive affine function vanishing on the piece, positive at `side`.
AffineFn piece_normal(const RayPiece& piece, const Vec2& side);

// <n, r~(q)> for a P-tilde exponent q at a point of the piece.
std::int64_t crossing_exponent(const RayPiece& piece, const Exponent& q, const Vec2& side);

// Expansion of prod_j f_j^N as (coefficient, increment, length) terms.
// All pieces must lie on one line so that N is uniform.
struct BendTerm {
  Rational coeff;
  Exponent increment;
  int length = 0;
};
std::vector<BendTerm> bend_expansion(const std::vector<const RayPiece*>& pieces, const Exponent& q,
                                     const Vec2& side, const AlgebraPtr& algebra);

// z^q -> z^q prod f^<n, r~(q)> applied termwise; n positive at `side`.
TruncatedSeries wall_cross_transform(const TruncatedSeries& s, const std::vector<const RayPiece*>& pieces,
                                     const Vec2& side);

}  // namespace jag

#endif  // JAGGED_STRUCTURE_HPP
