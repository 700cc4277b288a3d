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

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cartan/matrix.hpp"

namespace cartan {

inline constexpr int kMaxQubits = 4;

/// Tensor product of single-qubit Paulis, letters packed base 4
/// (I=0, X=1, Y=2, Z=3) with qubit 0 as the most significant digit, which
/// matches the Kronecker ordering of dense matrices.
class PauliString {
 public:
  PauliString(int qubits, std::uint32_t code);

  static PauliString parse(std::string_view letters);
  static PauliString identity(int qubits) { return PauliString(qubits, 0); }

  int qubits() const noexcept { return qubits_; }
  std::uint32_t code() const noexcept { return code_; }
  /// Position in a HamiltonianVector (the identity has no slot).
  std::size_t index() const;
  int letter_code(int qubit) const noexcept { return static_cast<int>((code_ >> (2 * (qubits_ - 1 - qubit))) & 3u); }
  char letter(int qubit) const noexcept { return "IXYZ"[letter_code(qubit)]; }
  int weight() const noexcept;
  int count(char letter) const noexcept;
  bool is_identity() const noexcept { return code_ == 0; }
  bool commutes_with(const PauliString& other) const;
  std::string str() const;
  Matrix matrix() const;

  auto operator<=>(const PauliString&) const = default;

 private:
  int qubits_;
  std::uint32_t code_;
};

struct PauliProduct {
  int i_power;  // phase = i^i_power, i_power in 0..3
  PauliString string;
  cplx phase() const;
};

/// P Q = i^k R, exactly.
PauliProduct multiply_strings(const PauliString& p, const PauliString& q);

/// All 4^n - 1 non-identity strings in index order.
std::vector<PauliString> all_strings(int qubits);

/// Real coefficients over the non-identity Pauli strings: H = sum c_P P.
class HamiltonianVector {
 public:
  HamiltonianVector() : qubits_(0) {}
  explicit HamiltonianVector(int qubits);
  HamiltonianVector(int qubits, RealVector coefficients);

  /// Coefficients tr(P H) / 2^n of a Hermitian matrix; the trace part is
  /// discarded.
  static HamiltonianVector from_dense(const Matrix& h);
  static HamiltonianVector single(const PauliString& p, double value = 1.0);

  int qubits() const noexcept { return qubits_; }
  int dim() const noexcept { return 1 << qubits_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(coefficients_.size()); }
  const RealVector& coefficients() const noexcept { return coefficients_; }
  RealVector& coefficients() noexcept { return coefficients_; }

  double operator[](const PauliString& p) const { return coefficients_(static_cast<Eigen::Index>(p.index())); }
  double& operator[](const PauliString& p) { return coefficients_(static_cast<Eigen::Index>(p.index())); }

  Matrix dense() const;
  bool is_zero() const { return coefficients_.isZero(0.0); }

  HamiltonianVector& operator+=(const HamiltonianVector& o);
  HamiltonianVector& operator-=(const HamiltonianVector& o);
  HamiltonianVector& operator*=(double s);
  friend HamiltonianVector operator+(HamiltonianVector a, const HamiltonianVector& b) { return a += b; }
  friend HamiltonianVector operator-(HamiltonianVector a, const HamiltonianVector& b) { return a -= b; }
  friend HamiltonianVector operator*(HamiltonianVector a, double s) { return a *= s; }
  friend HamiltonianVector operator*(double s, HamiltonianVector a) { return a *= s; }
  friend HamiltonianVector operator-(HamiltonianVector a) { return a *= -1.0; }

 private:
  int qubits_;
  RealVector coefficients_;
};

/// tr(A B) = 2^n sum_P a_P b_P.
double trace_inner_product(const HamiltonianVector& a, const HamiltonianVector& b);

/// |H| = sqrt(tr(H^2)).
double trace_norm(const HamiltonianVector& h);

/// -i [A, B], which is again Hermitian, from the structure constants.
HamiltonianVector commutator(const HamiltonianVector& a, const HamiltonianVector& b);

enum class Subspace { l, p };
enum class SplitKind { single_x, two_local, ai };

std::optional<SplitKind> parse_split_kind(std::string_view name);
std::string to_string(SplitKind kind);

/// An orthogonal split su(2^n) = l + p spanned by Pauli strings, a
/// commuting family z inside p, and the adapted frame Q.
struct CartanSplit {
  std::string name;
  int qubits = 0;
  std::vector<PauliString> l;
  std::vector<PauliString> p;
  std::vector<PauliString> z;
  Matrix adapted_basis;

  int dim() const noexcept { return 1 << qubits; }
  bool in_l(const PauliString& s) const;
  bool in_p(const PauliString& s) const;
  bool in_z(const PauliString& s) const;
};

/// Builds a split from letter lists; Q defaults to the identity.
CartanSplit make_split(std::string name, int qubits, std::vector<PauliString> l, std::vector<PauliString> p,
                       std::vector<PauliString> z, std::optional<Matrix> adapted_basis = std::nullopt);

CartanSplit builtin_split(int qubits, SplitKind kind);

/// The two-qubit magic basis: columns are Bell states with phases chosen so
/// that SU(2) x SU(2) becomes SO(4).
Matrix magic_basis();

HamiltonianVector project(const HamiltonianVector& h, const CartanSplit& split, Subspace which);
HamiltonianVector project_z(const HamiltonianVector& h, const CartanSplit& split);

struct CommutatorViolation {
  PauliString first;
  PauliString second;
  std::string relation;  // "[l,l]", "[p,l]" or "[p,p]"
  PauliString result;
};

struct SplitReport {
  bool ll_ok = true;
  bool pl_ok = true;
  bool pp_ok = true;
  bool orthogonal_ok = true;
  /// The commutators [p, l] span all of p (reported, not required).
  bool pl_spans = true;
  std::vector<CommutatorViolation> violations;
  std::vector<std::string> notes;

  bool valid() const noexcept { return ll_ok && pl_ok && pp_ok && orthogonal_ok; }
};

/// Checks [l,l] in l, [p,l] in p, [p,p] in l and that l, p partition the
/// non-identity strings. Each commutator of two strings is a single string,
/// so containment is decided exactly; tol bounds the coefficient mass that
/// may leak out of the required subspace.
SplitReport verify_cartan_split(const CartanSplit& split, double tol);

/// z is commuting and no direction of p outside span(z) commutes with all
/// of z (nullity of the joint commutator map equals |z|).
bool verify_maximal_abelian(const CartanSplit& split);

struct AdaptedBasisReport {
  double max_imag_defect = 0;        // max |Im(Q^+ e^{iK} Q)|
  double max_orthogonal_defect = 0;  // max |O^T O - I|
  double max_offdiagonal = 0;        // max off-diagonal |Q^+ Z Q|
  bool ok = true;
};

AdaptedBasisReport adapted_basis_properties(const CartanSplit& split, int samples, std::uint64_t seed);

}  // namespace cartan
