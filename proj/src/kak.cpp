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

#include "cartan/kak.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cartan/errors.hpp"

namespace cartan {
namespace {

constexpr double kMembershipTol = 1e-9;

// Nearest orthogonal matrix, A (A^T A)^{-1/2}.
RealMatrix reorthogonalize(const RealMatrix& a) {
  const SymmetricEigen e = eig_symmetric(a.transpose() * a);
  RealVector inv_sqrt = e.values.cwiseSqrt().cwiseInverse();
  return a * e.vectors * inv_sqrt.asDiagonal() * e.vectors.transpose();
}

// Hamiltonian H with Q e^{X} Q^+ = e^{iH}, for real antisymmetric X.
HamiltonianVector from_adapted_generator(const RealMatrix& x, const Matrix& q) {
  const Matrix h = q * (cplx(0, -1) * x.cast<cplx>()) * q.adjoint();
  return HamiltonianVector::from_dense(0.5 * (h + h.adjoint()));
}

HamiltonianVector from_adapted_diagonal(const RealVector& phases, const Matrix& q) {
  const Matrix h = q * phases.cast<cplx>().asDiagonal() * q.adjoint();
  return HamiltonianVector::from_dense(0.5 * (h + h.adjoint()));
}

double leakage(const HamiltonianVector& h, const std::vector<PauliString>& allowed) {
  HamiltonianVector rest = h;
  for (const auto& s : allowed) rest[s] = 0.0;
  return rest.coefficients().cwiseAbs().maxCoeff();
}

HamiltonianVector restricted(const HamiltonianVector& h, const std::vector<PauliString>& allowed) {
  HamiltonianVector out(h.qubits());
  for (const auto& s : allowed) out[s] = h[s];
  return out;
}

HamiltonianVector checked(const HamiltonianVector& h, const std::vector<PauliString>& allowed, const char* what) {
  const double leak = leakage(h, allowed);
  if (leak > kMembershipTol * std::max(1.0, h.coefficients().cwiseAbs().maxCoeff()))
    throw ConsistencyError(std::string("kak_decompose: ") + what + " leaves its subspace by " + std::to_string(leak));
  return restricted(h, allowed);
}

}  // namespace

SpecialProjection project_to_special(const Matrix& u) {
  if (u.rows() != u.cols()) throw PreconditionError("input matrix is not square");
  if (!is_unitary(u, 1e-9))
    throw PreconditionError("input matrix fails is_unitary (defect " + std::to_string(unitarity_defect(u)) + ")");
  const double phase = std::arg(determinant(u)) / static_cast<double>(u.rows());
  return {u * std::polar(1.0, -phase), phase};
}

KakFactors kak_decompose(const Matrix& u, const CartanSplit& split) {
  if (u.rows() != split.dim() || u.cols() != split.dim())
    throw PreconditionError("kak_decompose: matrix dimension " + std::to_string(u.rows()) +
                            " does not match split dimension " + std::to_string(split.dim()));
  if (!is_unitary(u, 1e-9)) throw PreconditionError("kak_decompose: input fails is_unitary");
  if (!is_special(u, 1e-9)) throw PreconditionError("kak_decompose: input fails is_special");

  const Matrix& q = split.adapted_basis;
  const Eigen::Index dim = u.rows();
  const Matrix v = q.adjoint() * u * q;
  Matrix msym = v.transpose() * v;
  msym = (0.5 * (msym + msym.transpose())).eval();
  const SymmetricUnitaryDiag sd = diag_symmetric_unitary(msym);

  // Principal square roots of E; det D = +-1, fixed by a pi shift on the
  // entry whose phase is closest to -pi (lowest index on ties).
  RealVector theta(dim);
  for (Eigen::Index k = 0; k < dim; ++k) theta(k) = 0.5 * std::arg(sd.diagonal(k));
  const double turns = theta.sum() / kPi;
  if (std::abs(turns - 2.0 * std::round(turns / 2.0)) > 0.5) {
    Eigen::Index lowest = 0;
    theta.minCoeff(&lowest);
    theta(lowest) += kPi;
  }
  // 2 pi moves make the phases sum to zero without changing D.
  long wraps = std::lround(theta.sum() / (2.0 * kPi));
  std::vector<Eigen::Index> order(static_cast<std::size_t>(dim));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto i, auto j) { return theta(i) > theta(j); });
  for (long w = 0; w < std::abs(wraps); ++w) {
    if (wraps > 0)
      theta(order[static_cast<std::size_t>(w) % order.size()]) -= 2.0 * kPi;
    else
      theta(order[order.size() - 1 - static_cast<std::size_t>(w) % order.size()]) += 2.0 * kPi;
  }
  theta.array() -= theta.mean();

  KakFactors f{split.name, HamiltonianVector(split.qubits), HamiltonianVector(split.qubits),
               HamiltonianVector(split.qubits), Matrix(), Matrix(), Matrix(), theta};
  ComplexVector dvec(dim);
  for (Eigen::Index k = 0; k < dim; ++k) dvec(k) = std::polar(1.0, theta(k));
  f.d = dvec.asDiagonal();

  const Matrix o = sd.orthogonal.cast<cplx>();
  const Matrix a_complex = v * o * dvec.conjugate().asDiagonal();
  const double imag_defect = a_complex.imag().cwiseAbs().maxCoeff();
  if (imag_defect > 1e-7) throw NumericalError("kak_decompose: adapted factor A is not real", imag_defect);
  const RealMatrix a = reorthogonalize(a_complex.real());
  if (a.determinant() < 0) throw ConsistencyError("kak_decompose: adapted factor A has determinant -1");

  f.a = a.cast<cplx>();
  f.b = o;
  f.l = checked(from_adapted_generator(log_special_orthogonal(a), q), split.l, "L");
  f.m = checked(from_adapted_generator(log_special_orthogonal(sd.orthogonal.transpose()), q), split.l, "M");
  f.z = checked(from_adapted_diagonal(theta, q), split.z, "Z");
  return f;
}

Matrix reconstruct(const KakFactors& f) { return expi(f.l.dense()) * expi(f.z.dense()) * expi(f.m.dense()); }

EigenphaseVector canonical_eigenphases(const RealVector& raw) {
  EigenphaseVector out;
  out.order.resize(static_cast<std::size_t>(raw.size()));
  std::iota(out.order.begin(), out.order.end(), 0);
  std::stable_sort(out.order.begin(), out.order.end(), [&](int i, int j) { return raw(i) > raw(j); });
  out.phases.resize(raw.size());
  for (Eigen::Index k = 0; k < raw.size(); ++k) out.phases(k) = raw(out.order[static_cast<std::size_t>(k)]);
  return out;
}

EigenphaseVector eigenphases(const KakFactors& f) { return canonical_eigenphases(f.phases); }

KakFactors shift_phases(const KakFactors& f, const CartanSplit& split, const std::vector<int>& shift) {
  const Eigen::Index dim = f.phases.size();
  if (static_cast<Eigen::Index>(shift.size()) != dim) throw PreconditionError("shift_phases: length mismatch");
  if (std::accumulate(shift.begin(), shift.end(), 0) != 0) throw PreconditionError("shift_phases: shift must sum to zero");

  KakFactors out = f;
  RealVector signs(dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    out.phases(k) = f.phases(k) - kPi * shift[static_cast<std::size_t>(k)];
    signs(k) = (shift[static_cast<std::size_t>(k)] % 2 == 0) ? 1.0 : -1.0;
  }
  // D' = D S and A' = A S with S = diag(signs) in SO(N), so A' D' = A D.
  const RealMatrix a = f.a.real() * signs.asDiagonal();
  out.a = a.cast<cplx>();
  out.d = f.d * signs.cast<cplx>().asDiagonal();
  out.l = checked(from_adapted_generator(log_special_orthogonal(a), split.adapted_basis), split.l, "L");
  out.z = checked(from_adapted_diagonal(out.phases, split.adapted_basis), split.z, "Z");
  return out;
}

}  // namespace cartan
