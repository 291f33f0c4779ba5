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

#ifndef JAGGED_MUMFORD_HPP
#define JAGGED_MUMFORD_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "jagged/geometry.hpp"
#include "jagged/paths.hpp"
#include "jagged/poly.hpp"
#include "jagged/series.hpp"

namespace jag {

// Periodic data on M_R = R^n: a fundamental domain of cells carrying phi,
// the lattice Gamma by generators, and phi(m + g) = phi(m) + alpha_g(m).
struct MumfordData {
  int rank = 1;
  std::vector<std::vector<std::int64_t>> gamma;  // generators
  std::vector<AffineFn> alpha;                   // one per generator
  std::vector<std::vector<Coords>> cells;
  std::vector<AffineFn> phi;
};

MumfordData mumford_from_json(const nlohmann::json& doc);

// alpha for the lattice element sum_i n_i gamma_i, by the cocycle rule.
AffineFn mumford_alpha(const MumfordData& d, const std::vector<std::int64_t>& n);

std::vector<std::int64_t> lattice_vector(const MumfordData& d, const std::vector<std::int64_t>& n);

// psi_g(p, r, l) = (p + l g, r + d(alpha_g)(p) + l c_g, l) on exponents (p, r, l).
Exponent mumford_psi(const MumfordData& d, const std::vector<std::int64_t>& n, const Exponent& e);

Rational mumford_phi(const MumfordData& d, const Coords& y);

// Representative of y in the parallelotope spanned by the generators.
Coords mumford_reduce(const MumfordData& d, const Coords& y);

// Points of (1/level)M modulo Gamma, reduced.
std::vector<Coords> mumford_basis(const MumfordData& d, std::int64_t level);

// The lattice sum of theta_m in the chart of `cell`, to t-order k.
TruncatedSeries mumford_theta(const MumfordData& d, const Coords& m, std::int64_t level, int cell, std::int64_t k);

struct MumfordExpansion {
  std::int64_t level = 0;
  std::map<Coords, Poly> coeffs;  // reduced points
};

MumfordExpansion mumford_product(const MumfordData& d, const Coords& m1, std::int64_t l1, const Coords& m2,
                                 std::int64_t l2, std::int64_t k);

// The same coefficients read off the product of the two lattice sums.
MumfordExpansion mumford_product_by_solve(const MumfordData& d, const Coords& m1, std::int64_t l1, const Coords& m2,
                                          std::int64_t l2, std::int64_t k);

struct EquivalenceReport {
  std::vector<std::string> lines;  // one per comparison
  int failures = 0;
  bool ok() const { return failures == 0; }
};

// Compares path lifts and theta products on the torus complex with the
// lattice sums, for levels up to max_level and products of total level at
// most max_level, to t-order cut.torder.
EquivalenceReport equivalence_check(const MumfordData& d, const ChartComplex& c, const Structure& s,
                                    std::int64_t max_level, const Cutoffs& cut, int samples_per_cell,
                                    std::uint64_t seed);

}  // namespace jag

#endif  // JAGGED_MUMFORD_HPP
