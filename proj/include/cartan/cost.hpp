// Copyright 2026 The cartan-cost Authors
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

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cartan/kak.hpp"

namespace cartan {

/// The scaled root lattice {pi * m : m integer, sum(m) = 0}.
struct SumZeroLattice {
  int dim;
  double scale = kPi;
};

struct LatticePoint {
  std::vector<int> m;
  double distance;  // |x - scale * m|
};

/// Nearest point of the scaled A_{N-1} lattice: round every coordinate
/// (halves toward zero), then repair the coordinate sum by moving the
/// coordinates whose rounding residual is worst, O(N log N).
LatticePoint closest_lattice_point(std::span<const double> x, const SumZeroLattice& lattice);

/// Exhaustive search over m in [-radius, radius]^N with sum(m) = 0
/// (depth-first, pruned on the partial distance). Test oracle.
LatticePoint closest_lattice_point_bruteforce(std::span<const double> x, int radius, double scale = kPi);

struct CostReport {
  double cost = 0;
  EigenphaseVector eigenphases;   // canonical, descending
  std::vector<int> lattice_point; // in canonical order
  RealVector shifted_phases;      // eigenphases - pi * lattice_point
  KakFactors factors;             // factors whose Z is the minimizer
  double removed_phase = 0;
};

/// D(I, U): distance from the eigenphase vector of Z to the lattice.
/// Non-special unitaries are first divided by det(U)^{1/N}.
CostReport optimal_cost(const Matrix& u, const CartanSplit& split);

/// (1/sqrt 2) min_m |z - 2 m pi| for U = e^{-i x X} e^{-i z S} e^{-i y X}
/// where z S has eigenvalues +-z/2 (S = Z/2). The outer angles do not
/// enter the cost.
double single_qubit_cost(double x, double z, double y);

/// Cost of e^{-i z Z} from the general pipeline with standard Paulis:
/// sqrt 2 * min_m |z - m pi|.
double single_qubit_cost_standard(double z);

struct InvarianceReport {
  double base_cost = 0;
  double max_deviation = 0;
  int violations = 0;
  bool ok = true;
};

/// optimal_cost(e^{iK1} U e^{iK2}) == optimal_cost(U) for random K1, K2 in l.
InvarianceReport cheap_invariance_check(const Matrix& u, const CartanSplit& split, int samples, std::uint64_t seed,
                                        double tol = 1e-8);

}  // namespace cartan
