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

#ifndef JAGGED_COMPLEX_HPP
#define JAGGED_COMPLEX_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jagged/geometry.hpp"
#include "jagged/series.hpp"

namespace jag {

// A point of B given in the chart of one cell.
struct Point {
  int cell = 0;
  Coords x;

  bool operator==(const Point& o) const { return cell == o.cell && x == o.x; }
  bool operator<(const Point& o) const { return cell < o.cell || (cell == o.cell && x < o.x); }
};

std::string to_string(const Point& p);

enum class Layer { lambda, aff_dual, p, ptilde };

int layer_rank(Layer layer, int dim);
const char* to_string(Layer layer);

// One branch of an edge gluing, oriented from one cell chart to the other.
//
// The P-tilde twist is the affine function g (in the source chart) with
// (u, s, d) -> (M u + d t, s + g.(u, d), d).
struct Transition {
  AffineMap map;
  AffineFn twist;

  Exponent apply(Layer layer, const Exponent& e) const;
  Transition inverse() const;
  Transition then(const Transition& next) const;
};

struct Cell {
  int id = 0;
  std::vector<Coords> vertices;  // counter-clockwise, integral
};

struct EdgeRef {
  int cell = 0;
  int edge = 0;
  bool operator==(const EdgeRef& o) const { return cell == o.cell && edge == o.edge; }
};

struct Gluing {
  EdgeRef a, b;
  // Branches ordered along a's edge (from its first vertex) and along b's edge.
  std::vector<Transition> forward, backward;
  // Edge parameter on a's edge of the singular point splitting the branches.
  std::optional<Rational> split;
  // Kink of phi across the edge (multiple of the primitive normal of a).
  Rational kink;
  // Twists given by the document rather than derived from phi.
  bool explicit_twist = false;
};

struct CheckLine {
  std::string name;
  bool ok = true;
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckLine> checks;
  bool ok() const;
  void add(std::string name, bool ok, std::string detail = {});
};

// Result of leaving a cell through a point of one of its edges.
struct Crossing {
  int to_cell = 0;
  int to_edge = 0;
  Transition transition;
};

// Integral affine manifold with singularities presented by cell charts.
class ChartComplex {
 public:
  std::string name;
  int dim = 2;
  std::vector<Cell> cells;
  std::vector<Gluing> gluings;
  std::vector<AffineFn> phi;
  bool has_phi = true;
  std::map<std::string, Point> labels;
  std::vector<std::string> label_order;
  // Singular vertices (Looijenga origin); singular edge points live in gluings.
  std::vector<Point> singular_vertices;

  // Fills derived tables and runs every structural check. Throws
  // Error(validation) with the first failure unless `report` is given.
  void finalize(ValidationReport* report = nullptr);

  int num_edges(int cell) const;
  // Endpoints of an edge in the cell chart.
  std::pair<Coords, Coords> edge_endpoints(int cell, int edge) const;
  // Primitive affine function vanishing on the edge, positive outside the cell.
  AffineFn outward_normal(int cell, int edge) const;
  bool is_boundary(int cell, int edge) const;
  // Gluing index and whether the cell is its `a` side; -1 for boundary.
  std::pair<int, bool> gluing_of(int cell, int edge) const;
  // Parameter of the singular point on this edge, in this cell's orientation.
  std::optional<Rational> singular_param(int cell, int edge) const;

  // Transition used when leaving `cell` through the edge at parameter s.
  Crossing cross(int cell, int edge, const Rational& s) const;

  // Location of a point relative to a cell: interior, edge, or vertex.
  struct Location {
    enum Kind { outside, interior, edge, vertex } kind = outside;
    int index = -1;  // edge or vertex index
    Rational param;  // edge parameter
  };
  Location locate(int cell, const Coords& x) const;

  // All charts containing the point, including itself. For a vertex this is
  // the vertex class; for an edge point both sides.
  std::vector<Point> representatives(const Point& p) const;
  Point canonical(const Point& p) const;

  // Exponent of the t-order functional of a P-tilde germ in the cell chart:
  // t-order(u, s, d) = s - phi_c.(u, d).
  Rational torder(int cell, const Exponent& e) const;
  // Weights of the t-order as a linear functional on P-tilde exponents.
  std::vector<Rational> torder_weights(int cell) const;

  std::optional<Point> label(const std::string& name) const;
  std::string point_name(const Point& p) const;
  bool is_singular_vertex(const Point& p) const;

 private:
  std::vector<std::vector<std::pair<int, bool>>> sides_;
  std::vector<std::vector<int>> vertex_class_;
  std::vector<std::vector<Point>> class_members_;
};

// Scenario loading. The document follows the JSON scenario schema.
ChartComplex complex_from_json(const std::string& text, ValidationReport* report = nullptr);

// A stalk element of one of the local systems, anchored at a point.
struct Germ {
  Layer layer = Layer::ptilde;
  Exponent exponent;
  Point base;
};

// Crossing of a single edge by the straight segment from `from` to `to`
// (the latter in the chart of the neighbouring cell).
struct Step {
  int edge = 0;
  Rational param;  // edge parameter of the crossing point
  Coords hit;      // crossing point in the chart of `from`
  Transition transition;
};
Step step_across(const ChartComplex& c, const Point& from, const Point& to);

// Transport along waypoints; consecutive waypoints are joined by a straight
// segment inside one cell or across a single shared edge.
Germ parallel_transport(const ChartComplex& c, const Germ& g, const std::vector<Point>& path);

// Tangent vector u - d x of an Aff* or P-tilde germ at its basepoint.
Coords vect(const ChartComplex& c, const Germ& g);

Germ m_phi(const ChartComplex& c, const Point& m, std::int64_t level);

std::vector<Point> enumerate_rational_points(const ChartComplex& c, std::int64_t level);

// Lambda-layer monodromy of a closed loop: v -> M v in the chart of the
// first waypoint.
AffineMap monodromy(const ChartComplex& c, const std::vector<Point>& loop);

// Integer 2x2 matrix conjugacy, by bounded search in GL2(Z).
bool conjugate_gl2(const AffineMap& a, const AffineMap& b, bool require_sl2 = false);

ChartComplex build_looijenga(const std::vector<std::int64_t>& selfints);
// Clockwise loop around the Looijenga origin through every cone.
std::vector<Point> looijenga_loop(const ChartComplex& c);

ChartComplex truncated_cone(const ChartComplex& base, std::int64_t height = 8);

}  // namespace jag

#endif  // JAGGED_COMPLEX_HPP
