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

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

namespace cartan {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kPi = 3.14159265358979323846;

// Predicates. Tolerances are absolute on the max-entry defect, scaled by
// max(1, max|entry|) so that large generators are judged fairly.
bool is_unitary(const Matrix& m, double tol);
bool is_special(const Matrix& m, double tol);
bool is_symmetric(const Matrix& m, double tol);
bool is_real(const Matrix& m, double tol);
bool is_hermitian(const Matrix& m, double tol);
bool is_antihermitian(const Matrix& m, double tol);

/// Frobenius norm of U^dagger U - I.
double unitarity_defect(const Matrix& u);

cplx determinant(const Matrix& m);

struct HermitianEigen {
  RealVector values;  // ascending
  Matrix vectors;     // columns are eigenvectors
};

struct SymmetricEigen {
  RealVector values;  // ascending
  RealMatrix vectors;
};

/// Cyclic Jacobi eigensolver for Hermitian matrices.
HermitianEigen eig_hermitian(const Matrix& h);

/// Cyclic Jacobi for real symmetric matrices; eigenvectors are real.
SymmetricEigen eig_symmetric(const RealMatrix& s);

/// Common eigenbasis of two commuting Hermitian matrices. The pencil
/// A + c B is diagonalized for a fixed irrational c; clusters of nearly
/// equal pencil eigenvalues are refined by diagonalizing A, then B,
/// restricted to the cluster.
Matrix simultaneous_diagonalize(const Matrix& a, const Matrix& b);
RealMatrix simultaneous_diagonalize(const RealMatrix& a, const RealMatrix& b);

/// e^X for anti-Hermitian X, via the eigendecomposition of iX.
Matrix expm(const Matrix& x);

/// e^{iH} for Hermitian H.
Matrix expi(const Matrix& h);

/// Principal logarithm of a unitary: anti-Hermitian X with e^X = U and
/// eigenphases in (-pi, pi].
Matrix logm_unitary(const Matrix& u);

struct SymmetricUnitaryDiag {
  RealMatrix orthogonal;   // O, real with det +1
  ComplexVector diagonal;  // E, unit-modulus entries
};

/// Factor a complex-symmetric unitary as O diag(E) O^T with O in SO(N).
/// Throws PreconditionError for non symmetric-unitary input and
/// NumericalError when the reconstruction misses 1e-8.
SymmetricUnitaryDiag diag_symmetric_unitary(const Matrix& msym);

/// Real antisymmetric X with expm(X) = O, rotation angles in (-pi, pi].
/// Eigenvalue -1 blocks are paired explicitly into planar pi rotations.
RealMatrix log_special_orthogonal(const RealMatrix& o);

/// ||U - V||_F, or min over unit phases phi of ||U - phi V||_F.
double frobenius_distance(const Matrix& u, const Matrix& v, bool mod_global_phase);

/// Haar-distributed element of SU(N), deterministic in the seed.
Matrix haar_random_special_unitary(int dim, std::uint64_t seed);

/// Haar-distributed element of SO(N), deterministic in the seed.
RealMatrix haar_random_special_orthogonal(int dim, std::uint64_t seed);

}  // namespace cartan
