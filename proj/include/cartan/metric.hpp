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
#include <vector>

#include "cartan/exec.hpp"
#include "cartan/pauli.hpp"

namespace cartan {

/// The cost form eps P_l + P_p: l directions are eps-cheap.
class PenaltyMetric {
 public:
  PenaltyMetric(CartanSplit split, double epsilon);

  const CartanSplit& split() const noexcept { return split_; }
  double epsilon() const noexcept { return epsilon_; }
  /// eps for strings in l, 1 otherwise, indexed like HamiltonianVector.
  const RealVector& weights() const noexcept { return weights_; }

 private:
  CartanSplit split_;
  double epsilon_;
  RealVector weights_;
};

/// <A, (eps P_l + P_p) B> under the trace inner product.
double metric_inner(const HamiltonianVector& a, const HamiltonianVector& b, const PenaltyMetric& metric);

/// sqrt(eps |P_l H|^2 + |P_p H|^2).
double hamiltonian_cost(const HamiltonianVector& h, const PenaltyMetric& metric);

/// BCH_L(P) = phi(ad_{iL})(P), phi(w) = (e^w - 1)/w, truncated after
/// `terms` terms. First-order effect of perturbing the exponent:
///   exp(i(L + d P)) = exp(i d BCH_L(P)) exp(iL) + O(d^2).
/// Requires |L| <= 2 (trace norm).
HamiltonianVector bch_operator(const HamiltonianVector& l, const HamiltonianVector& p, int terms = 30);

/// A point (L, Z, M) of the coordinate space.
struct BasePoint {
  HamiltonianVector l;
  HamiltonianVector z;
  HamiltonianVector m;
};

/// Seeded point with |L|, |M| uniform in (0, max_norm] (random direction in
/// l) and z coefficients uniform in [-max_norm, max_norm] / sqrt(|z| 2^n).
BasePoint random_base_point(const CartanSplit& split, std::uint64_t seed, double max_norm = 1.0);

/// e^{iL} e^{iZ} e^{iM}.
Matrix coordinate_unitary(const BasePoint& base);

/// Orthonormal (trace inner product) basis P / sqrt(2^n) of the strings.
std::vector<HamiltonianVector> coordinate_basis(const std::vector<PauliString>& strings);

/// Gram matrix of the penalty metric pulled back to the (l, z, l)
/// coordinates. Block k spans [offset(k), offset(k) + size(k)).
struct CoordinateGram {
  BasePoint base;
  RealMatrix gram;
  int l_dim = 0;
  int z_dim = 0;
  double fd_step = 0;
  /// max |v(h) - v(h/2)| over the right-trivialized tangents.
  double richardson_residual = 0;

  int block_offset(int k) const noexcept { return k == 0 ? 0 : (k == 1 ? l_dim : l_dim + z_dim); }
  int block_size(int k) const noexcept { return k == 1 ? z_dim : l_dim; }
  RealMatrix block(int i, int j) const {
    return gram.block(block_offset(i), block_offset(j), block_size(i), block_size(j));
  }
};

/// Central finite differences of U(L, Z, M) along every coordinate
/// direction, right-trivialized (H = i dU U^+, the Schrodinger
/// convention), then evaluated with the penalty metric. Directions are
/// independent tasks under Exec::parallel.
CoordinateGram pullback_gram(const BasePoint& base, const PenaltyMetric& metric, double fd_step = 1e-4,
                             Exec exec = Exec::parallel);

/// Same Gram from closed-form tangents: BCH_L(e_i), Ad_{e^{iL}} e_j and
/// Ad_{e^{iL} e^{iZ}} BCH_M(e_k).
RealMatrix analytic_gram(const BasePoint& base, const PenaltyMetric& metric);

struct GramTolerances {
  double off_diagonal = 1e-4;
  double central = 1e-5;
  double relative = 1e-4;
  double psd = 1e-8;
};

struct GramStructureReport {
  double g12_max = 0;
  double g13_max = 0;
  double g23_max = 0;
  /// All off-diagonal blocks vanish.
  bool block_diagonal_ok = false;
  /// Only the couplings to the z block vanish (G12, G23).
  bool z_decoupled_ok = false;

  double central_deviation = 0;
  bool central_ok = false;

  double g11_relative_deviation = 0;
  bool g11_ok = false;

  bool z_is_zero = false;
  double g33_relative_deviation = 0;  // vs eps BCH_M^T BCH_M, only when Z = 0
  double g33_min_eigenvalue = 0;
  double g33_max_eigenvalue = 0;
  bool g33_ok = false;

  /// G13 against eps <BCH_L e_i, P_l Ad_{e^{iL} e^{iZ}} BCH_M e_j>.
  double g13_cross_term_deviation = 0;
  bool g13_cross_term_ok = false;

  /// The block structure as claimed: block diagonal, G22 = I,
  /// G11 = eps BCH^T BCH, G33 consistent.
  bool claims_ok() const noexcept { return block_diagonal_ok && central_ok && g11_ok && g33_ok; }
};

GramStructureReport verify_gram_structure(const CoordinateGram& gram, const PenaltyMetric& metric,
                                     const GramTolerances& tol = {});

}  // namespace cartan
