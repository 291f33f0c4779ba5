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

#ifndef JAGGED_PATHS_HPP
#define JAGGED_PATHS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "jagged/complex.hpp"
#include "jagged/series.hpp"
#include "jagged/structure.hpp"

namespace jag {

struct Cutoffs {
  std::int64_t torder = 6;
  int max_bends = 8;
  int max_length = 12;
};

struct PathSegment {
  int cell = 0;
  Coords a, b;
  Exponent q;      // P-tilde exponent carried along the segment, cell chart
  Rational coeff;  // accumulated coefficient
};

struct PathBend {
  int ray = -1;
  int segment = 0;  // index of the segment that starts after the bend
  Exponent increment;
  Rational coeff;
};

struct JaggedPath {
  std::vector<PathSegment> segments;
  std::vector<PathBend> bends;
  int length = 0;  // total wall-monomial length of the bends

  const PathSegment& last() const { return segments.back(); }
};

// Starting data of broken lines: a monomial entering `cell` through the
// segment [a, b] of one of its edges.
struct BrokenStart {
  int cell = 0;
  Exponent q;
  Vec2 a, b;
};

// All jagged paths from m (at level `level`) to x. Level 0 is refused here;
// broken lines use enumerate_broken.
std::vector<JaggedPath> enumerate_jagged(const ChartComplex& c, const Structure& d, const Point& m,
                                         std::int64_t level, const Point& x, const Cutoffs& cut);

std::vector<JaggedPath> enumerate_broken(const ChartComplex& c, const Structure& d,
                                         const std::vector<BrokenStart>& starts, const Point& x,
                                         const Cutoffs& cut);

// Algebra of P-tilde exponents at a point of `cell`.
AlgebraPtr lift_algebra(const ChartComplex& c, int cell, const Cutoffs& cut);

TruncatedSeries sum_paths(const ChartComplex& c, const std::vector<JaggedPath>& paths, int cell,
                          const Cutoffs& cut);

TruncatedSeries lift(const ChartComplex& c, const Structure& d, const Point& m, std::int64_t level,
                     const Point& x, const Cutoffs& cut);

// Broken lines on the truncated cone of a one-dimensional base. Starts are
// the asymptotic monomial (l m, l, l phi(m), 0) carried around the top of
// the cone from cell to cell, entering every top edge it reaches within the
// t-order cutoff.
std::vector<BrokenStart> cone_starts(const ChartComplex& cone, const ChartComplex& base, const Point& m,
                                     std::int64_t level, const Cutoffs& cut);

struct ConeMatch {
  int jagged = 0;
  int broken = 0;
  std::vector<std::string> problems;
  bool ok() const { return problems.empty(); }
};

// Projects broken lines ending at (h x, h) on the cone of `base` by
// (X, h) -> X/h and matches them one to one with the jagged paths from m to
// x on the base (empty structures on both).
ConeMatch cone_correspondence(const ChartComplex& base, const Point& m, std::int64_t level, const Point& x,
                              const Rational& h, const Cutoffs& cut, std::int64_t height);

// Throws a genericity error naming the offending line when x lies on a ray
// line, an edge line, or outside the interior of its cell.
void check_generic(const ChartComplex& c, const Structure& d, const Point& x);

// Deterministic rejection sampler for generic points of a cell with
// denominators at most `denominator_bound`.
Point generic_point(const ChartComplex& c, const Structure& d, int cell, std::uint64_t seed,
                    std::int64_t denominator_bound = 997);

// Monomials transported along a piecewise straight path, applying the
// wall-crossing automorphism at every ray crossed. Cutoffs are those of the
// algebra of `s`.
TruncatedSeries transport_across(const ChartComplex& c, const Structure& d, const TruncatedSeries& s,
                                 const Point& from, const std::vector<Point>& path);

struct ConsistencySample {
  Point m;
  std::int64_t level = 1;
  Point x1, x2;
  std::vector<Point> path;  // waypoints from x1 to x2, ending at x2
};

struct ConsistencyLine {
  ConsistencySample sample;
  bool ok = true;
  std::string detail;  // first differing term when not ok
};

struct ConsistencyReport {
  std::vector<ConsistencyLine> lines;
  bool ok() const;
};

// Samples crossing every glued edge (on each side of a singular point) and
// every cell carrying rays, for each basis point in `ms`.
std::vector<ConsistencySample> consistency_samples(const ChartComplex& c, const Structure& d,
                                                   const std::vector<Point>& ms, std::int64_t level,
                                                   std::uint64_t seed);

ConsistencyReport check_consistency(const ChartComplex& c, const Structure& d,
                                    const std::vector<ConsistencySample>& samples, const Cutoffs& cut);

// First term where two series differ, as text; empty when equal.
std::string first_difference(const TruncatedSeries& a, const TruncatedSeries& b);

}  // namespace jag

#endif  // JAGGED_PATHS_HPP
