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

#ifndef JAGGED_THETA_HPP
#define JAGGED_THETA_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jagged/paths.hpp"
#include "jagged/poly.hpp"

namespace jag {

// sum_m c_m(t) theta_m at a fixed level; points are canonical, no zero entries.
struct ThetaExpansion {
  std::int64_t level = 0;
  std::map<Point, Poly> coeffs;

  bool operator==(const ThetaExpansion& o) const { return level == o.level && coeffs == o.coeffs; }
};

// Products of theta functions by local expansion at one generic point per
// maximal cell, with caches for lifts, bases and products.
class ThetaEngine {
 public:
  ThetaEngine(const ChartComplex& c, const Structure& d, const Cutoffs& cut, std::uint64_t seed = 0);

  const ChartComplex& complex() const { return c_; }
  const Cutoffs& cutoffs() const { return cut_; }
  const std::vector<Point>& samples() const { return samples_; }
  const std::vector<Point>& basis(std::int64_t level);

  ThetaExpansion single(const Point& m, std::int64_t level) const;
  ThetaExpansion multiply(const Point& m1, std::int64_t l1, const Point& m2, std::int64_t l2);
  ThetaExpansion multiply(const ThetaExpansion& a, const ThetaExpansion& b);

  // Lift of theta_m at sample i.
  const TruncatedSeries& lift_at(std::size_t i, const Point& m, std::int64_t level);

 private:
  // Expresses one series per sample in the level basis; throws a
  // consistency error when the solution is not unique.
  ThetaExpansion decompose(const std::vector<TruncatedSeries>& targets, std::int64_t level);

  const ChartComplex& c_;
  // Draws a fresh sample for cell i after a genericity failure there.
  void resample(std::size_t i);

  const Structure& d_;
  Cutoffs cut_;
  std::uint64_t seed_;
  std::vector<Point> samples_;
  std::vector<int> redraws_;
  std::map<std::int64_t, std::vector<Point>> basis_;
  std::map<std::tuple<std::size_t, Point, std::int64_t>, TruncatedSeries> lifts_;
  std::map<std::tuple<Point, std::int64_t, Point, std::int64_t>, ThetaExpansion> products_;
};

// The monomial section of theta_m on the component of `cell`, or nothing
// when m is not in that cell.
std::optional<Exponent> theta_restrict(const ChartComplex& c, const Point& m, std::int64_t level, int cell);

// A polynomial relation among the level-1 generators. Keys are exponent
// vectors over the generators in label order.
struct Relation {
  int degree = 0;
  std::map<std::vector<int>, Poly> terms;
};

struct RelationSet {
  std::vector<std::string> generators;
  std::vector<Relation> relations;
};

// Relations of each degree 2..max_degree not generated by lower ones.
RelationSet find_relations(ThetaEngine& engine, int max_degree);

std::string format_relation(const Relation& r, const std::vector<std::string>& generators);

// Reads "XY = t(U^2+UW)" or "X*Y - t*U^2 - t*U*W". Juxtaposed single-letter
// generators multiply; t is the deformation parameter.
Relation parse_relation(const std::string& text, const std::vector<std::string>& generators);

// Equal counts in every degree and equal spans over Q(t).
bool same_relations(const std::vector<Relation>& a, const std::vector<Relation>& b);

// Name of a basis point as a generator monomial ("W*Z"), or a coordinate
// form when the point is not an average of generators in one cell.
std::string basis_name(const ChartComplex& c, const Point& m, std::int64_t level);

// "X*Y = t*Z^2 + t*W*Z".
std::string format_product(const ChartComplex& c, const std::string& lhs, const ThetaExpansion& e);

}  // namespace jag

#endif  // JAGGED_THETA_HPP
