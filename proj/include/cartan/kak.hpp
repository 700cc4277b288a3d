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

#include <string>
#include <vector>

#include "cartan/matrix.hpp"
#include "cartan/pauli.hpp"

namespace cartan {

/// U = e^{iL} e^{iZ} e^{iM}, with the adapted-frame picture
/// Q^+ U Q = A D B^T (A, B in SO(2^n), D diagonal with det 1).
struct KakFactors {
  std::string split_name;
  HamiltonianVector l;
  HamiltonianVector z;
  HamiltonianVector m;
  Matrix a;
  Matrix d;
  Matrix b;
  /// Arguments x_k of the diagonal of D, with sum(x) = 0 (x is the
  /// spectrum of Z in the adapted frame, in the order of D).
  RealVector phases;
};

struct SpecialProjection {
  Matrix special;
  double removed_phase;  // U = e^{i removed_phase} * special
};

/// Divides a unitary by the principal root det(U)^{1/N}.
SpecialProjection project_to_special(const Matrix& u);

/// Cartan decomposition of a special unitary with respect to a split.
KakFactors kak_decompose(const Matrix& u, const CartanSplit& split);

/// e^{iL} e^{iZ} e^{iM}.
Matrix reconstruct(const KakFactors& f);

/// Sum-zero eigenphases of Z in descending order.
struct EigenphaseVector {
  RealVector phases;
  /// phases(k) == f.phases(order[k]).
  std::vector<int> order;
};

EigenphaseVector eigenphases(const KakFactors& f);

/// Sorts into descending order and records the permutation.
EigenphaseVector canonical_eigenphases(const RealVector& raw);

/// Rebuilds the factors after shifting the diagonal phases by pi * shift
/// (shift given in the order of D, sum zero). The sign pattern moves from
/// D into A, so the product is unchanged.
KakFactors shift_phases(const KakFactors& f, const CartanSplit& split, const std::vector<int>& shift);

}  // namespace cartan
