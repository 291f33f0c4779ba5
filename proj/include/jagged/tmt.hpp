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

#ifndef JAGGED_TMT_HPP
#define JAGGED_TMT_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "jagged/mumford.hpp"
#include "jagged/paths.hpp"
#include "jagged/theta.hpp"

namespace jag {

// A planar tree with inputs v_{0,1}, ..., v_{d-1,d} in cyclic order and the
// output v_{0,d}. Node n spans inputs [lo, hi); its outgoing edge is
// e_{lo,hi}. Node 0 is the root, leaves have no children.
struct RibbonTree {
  struct Node {
    int lo = 0, hi = 0;
    int parent = -1;
    std::vector<int> children;
  };
  int d = 0;
  std::vector<Node> nodes;

  bool is_leaf(int n) const { return nodes[n].children.empty(); }
  // "(01,(12,23))"
  std::string to_string() const;
};

// Every ribbon tree with d inputs and internal valence at least three, in a
// deterministic order. 2 <= d <= 6.
std::vector<RibbonTree> enumerate_ribbon_trees(int d);

std::string edge_name(int i, int j);  // "e_{i,j}"

struct TmtEdge {
  int i = 0, j = 0;  // e_{i,j}
  std::int64_t level = 0;
  Coords from, to;   // universal cover coordinates
  Exponent monomial; // (u, s, l)
  bool contracted() const { return from == to; }
};

struct TropicalMorseTree {
  RibbonTree tree;
  std::vector<TmtEdge> edges;  // one per node, e_{0,d} first
  Coords output;               // reduced
  std::int64_t ord = 0;
  Rational coeff = 1;

  std::vector<std::string> contracted_edges() const;
};

// Tropical Morse trees of one combinatorial type on a one-dimensional torus,
// traced on the universal cover. levels has d + 1 distinct entries and
// points[i] = p_{i,i+1}. Throws a degenerate error when the trees of this
// type form a family of positive dimension, or (d >= 3) when a tree needs
// an edge contracted that the levels do not force.
std::vector<TropicalMorseTree> enumerate_tmt(const MumfordData& data, const RibbonTree& tree,
                                             const std::vector<std::int64_t>& levels,
                                             const std::vector<Coords>& points, std::int64_t k);

struct MuResult {
  std::int64_t level = 0;              // l_d - l_0
  std::map<Coords, Poly> coeffs;       // output point -> sum of c t^ord
  std::vector<TropicalMorseTree> trees;
};

// mu_d(theta_{p_{d-1,d}}, ..., theta_{p_{0,1}}) on a one-dimensional torus.
MuResult mu_torus(const MumfordData& data, const std::vector<std::int64_t>& levels,
                  const std::vector<Coords>& points, std::int64_t k);

// A trivalent tree for mu_2 on a general structure: jagged paths from m1 and
// m2 to a point x near the output point p whose product is t^ord p_phi.
struct BalancedPair {
  Point output;
  Point x;
  std::vector<PathSegment> first, second;
  std::int64_t ord = 0;
  Rational coeff;
};

struct Mu2Result {
  ThetaExpansion product;
  std::vector<BalancedPair> pairs;
  // Contributions read off paths from other output points near p; nonzero
  // only where rays pass through p.
  int corrections = 0;
};

// mu_2(theta_{m2}, theta_{m1}) from balanced pairs at perturbed output
// points, with ray corrections.
Mu2Result mu2(const ChartComplex& c, const Structure& d, const Point& m1, std::int64_t l1, const Point& m2,
              std::int64_t l2, const Cutoffs& cut, std::uint64_t seed = 0);

}  // namespace jag

#endif  // JAGGED_TMT_HPP
