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

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include "cartan/errors.hpp"
#include "cartan/matrix.hpp"
#include "unit/oracles.hpp"

using namespace cartan;
using cartan::testing::max_abs;
using cartan::testing::oracle_expi;
using cartan::testing::pauli;
using cartan::testing::random_hermitian;

TEST(Predicates, UnitaryAndSpecial) {
  const Matrix x = pauli("X");
  EXPECT_TRUE(is_unitary(x, 1e-12));
  EXPECT_FALSE(is_special(x, 1e-12));  // det X = -1
  EXPECT_TRUE(is_special(cplx(0, 1) * x, 1e-12));
  Matrix bad = x;
  bad(0, 1) = 2.0;
  EXPECT_FALSE(is_unitary(bad, 1e-9));
  EXPECT_GT(unitarity_defect(bad), 1.0);
}

TEST(Predicates, Structure) {
  EXPECT_TRUE(is_hermitian(pauli("Y"), 1e-14));
  EXPECT_TRUE(is_antihermitian(cplx(0, 1) * pauli("Y"), 1e-14));
  EXPECT_FALSE(is_symmetric(pauli("Y"), 1e-14));
  EXPECT_TRUE(is_symmetric(pauli("XZ"), 1e-14));
  EXPECT_TRUE(is_real(pauli("XZ"), 1e-14));
  EXPECT_FALSE(is_real(pauli("YI"), 1e-14));
}

TEST(EigHermitian, MatchesEigenOracle) {
  for (int dim : {2, 4, 8, 16}) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const Matrix h = random_hermitian(dim, seed * 17 + static_cast<std::uint64_t>(dim));
      const HermitianEigen e = eig_hermitian(h);
      Eigen::SelfAdjointEigenSolver<Matrix> oracle(h);
      EXPECT_LT((e.values - oracle.eigenvalues()).cwiseAbs().maxCoeff(), 1e-12) << "dim " << dim;
      const Matrix rebuilt = e.vectors * e.values.cast<cplx>().asDiagonal() * e.vectors.adjoint();
      EXPECT_LT(max_abs(rebuilt - h), 1e-12);
      EXPECT_TRUE(is_unitary(e.vectors, 1e-12));
    }
  }
}

TEST(EigHermitian, DegenerateSpectrum) {
  const Matrix h = pauli("ZZ") + pauli("XX");  // eigenvalues -2, 0, 0, 2
  const HermitianEigen e = eig_hermitian(h);
  EXPECT_NEAR(e.values(0), -2.0, 1e-13);
  EXPECT_NEAR(e.values(1), 0.0, 1e-13);
  EXPECT_NEAR(e.values(2), 0.0, 1e-13);
  EXPECT_NEAR(e.values(3), 2.0, 1e-13);
  EXPECT_TRUE(is_unitary(e.vectors, 1e-12));
}

TEST(EigHermitian, RejectsNonHermitian) {
  EXPECT_THROW(eig_hermitian(cplx(0, 1) * pauli("X")), PreconditionError);
}

TEST(EigSymmetric, RealVectors) {
  std::srand(3);
  const RealMatrix a = RealMatrix::Random(6, 6);
  const RealMatrix s = a + a.transpose();
  const SymmetricEigen e = eig_symmetric(s);
  Eigen::SelfAdjointEigenSolver<RealMatrix> oracle(s);
  EXPECT_LT((e.values - oracle.eigenvalues()).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT((e.vectors * e.values.asDiagonal() * e.vectors.transpose() - s).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(SimultaneousDiagonalize, CommutingPairWithDegeneracy) {
  // ZI and IZ share the computational basis; each alone is degenerate.
  const Matrix a = pauli("ZI"), b = pauli("IZ");
  const Matrix v = simultaneous_diagonalize(a, b);
  EXPECT_TRUE(is_unitary(v, 1e-12));
  for (const Matrix* m : {&a, &b}) {
    Matrix d = v.adjoint() * *m * v;
    d.diagonal().setZero();
    EXPECT_LT(max_abs(d), 1e-12);
  }
}

TEST(SimultaneousDiagonalize, RotatedCommutingPair) {
  const Matrix u = haar_random_special_unitary(8, 11);
  const Matrix a = u * pauli("ZII") * u.adjoint();
  const Matrix b = u * (pauli("IZI") + 0.5 * pauli("ZZZ")) * u.adjoint();
  const Matrix v = simultaneous_diagonalize(a, b);
  for (const Matrix* m : {&a, &b}) {
    Matrix d = v.adjoint() * *m * v;
    d.diagonal().setZero();
    EXPECT_LT(max_abs(d), 1e-10);
  }
}

TEST(Expm, MatchesPadeOracle) {
  for (int dim : {2, 4, 8}) {
    const Matrix h = random_hermitian(dim, 40 + static_cast<std::uint64_t>(dim), 3.0);
    EXPECT_LT(max_abs(expi(h) - oracle_expi(h)), 1e-12);
    EXPECT_LT(max_abs(expm(cplx(0, 1) * h) - oracle_expi(h)), 1e-12);
  }
}

TEST(Expm, RejectsNonAntiHermitian) { EXPECT_THROW(expm(pauli("X")), PreconditionError); }

TEST(LogmUnitary, PrincipalBranch) {
  const Matrix h = random_hermitian(4, 9, 0.8);
  const Matrix x = logm_unitary(oracle_expi(h));
  EXPECT_TRUE(is_antihermitian(x, 1e-12));
  EXPECT_LT(max_abs(x - cplx(0, 1) * h), 1e-11);
}

TEST(LogmUnitary, RoundTripLargeAngles) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Matrix u = haar_random_special_unitary(4, seed);
    EXPECT_LT(max_abs(expm(logm_unitary(u)) - u), 1e-11);
  }
}

TEST(DiagSymmetricUnitary, RandomSymmetricUnitaries) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Matrix v = haar_random_special_unitary(4, seed);
    const Matrix m = v.transpose() * v;
    const SymmetricUnitaryDiag d = diag_symmetric_unitary(m);
    EXPECT_NEAR(d.orthogonal.determinant(), 1.0, 1e-12);
    const Matrix o = d.orthogonal.cast<cplx>();
    EXPECT_LT(max_abs(o * d.diagonal.asDiagonal() * o.transpose() - m), 1e-10);
  }
}

TEST(DiagSymmetricUnitary, DegenerateIdentity) {
  const SymmetricUnitaryDiag d = diag_symmetric_unitary(Matrix::Identity(4, 4));
  EXPECT_LT((d.diagonal.array() - 1.0).abs().maxCoeff(), 1e-14);
}

TEST(DiagSymmetricUnitary, RejectsNonSymmetric) {
  EXPECT_THROW(diag_symmetric_unitary(haar_random_special_unitary(4, 2)), PreconditionError);
}

TEST(LogSpecialOrthogonal, GenericRotations) {
  for (int dim : {2, 3, 4, 8}) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const RealMatrix o = haar_random_special_orthogonal(dim, seed);
      const RealMatrix x = log_special_orthogonal(o);
      EXPECT_LT((x + x.transpose()).cwiseAbs().maxCoeff(), 1e-12);
      EXPECT_LT((x.exp() - o).cwiseAbs().maxCoeff(), 1e-10) << "dim " << dim << " seed " << seed;
    }
  }
}

TEST(LogSpecialOrthogonal, MinusOneEigenvalues) {
  // Rotation by exactly pi in two planes: eigenvalue -1 with multiplicity 4.
  RealMatrix o = -RealMatrix::Identity(4, 4);
  RealMatrix x = log_special_orthogonal(o);
  EXPECT_LT((x.exp() - o).cwiseAbs().maxCoeff(), 1e-12);
  // Conjugated, so the -1 eigenspace is not aligned with coordinates.
  const RealMatrix r = haar_random_special_orthogonal(4, 5);
  RealMatrix d = RealMatrix::Identity(4, 4);
  d(0, 0) = d(1, 1) = -1.0;
  o = r * d * r.transpose();
  x = log_special_orthogonal(o);
  EXPECT_LT((x.exp() - o).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LT((x + x.transpose()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(LogSpecialOrthogonal, Identity) {
  EXPECT_LT(log_special_orthogonal(RealMatrix::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(LogSpecialOrthogonal, RejectsReflection) {
  RealMatrix o = RealMatrix::Identity(3, 3);
  o(0, 0) = -1.0;
  EXPECT_THROW(log_special_orthogonal(o), PreconditionError);
}

TEST(FrobeniusDistance, ModGlobalPhase) {
  const Matrix u = haar_random_special_unitary(4, 1);
  const Matrix v = std::polar(1.0, 0.7) * u;
  EXPECT_GT(frobenius_distance(u, v, false), 0.5);
  EXPECT_LT(frobenius_distance(u, v, true), 1e-12);
}

TEST(Haar, DeterministicAndSpecial) {
  for (int dim : {2, 4, 8, 16}) {
    const Matrix a = haar_random_special_unitary(dim, 99);
    const Matrix b = haar_random_special_unitary(dim, 99);
    EXPECT_EQ(max_abs(a - b), 0.0);
    EXPECT_TRUE(is_unitary(a, 1e-12));
    EXPECT_TRUE(is_special(a, 1e-12));
  }
  EXPECT_GT(max_abs(haar_random_special_unitary(4, 1) - haar_random_special_unitary(4, 2)), 1e-3);
}

TEST(Haar, MeanTraceVanishes) {
  // E[tr U] = 0 for Haar measure on SU(N), N >= 2.
  cplx sum = 0;
  const int samples = 400;
  for (int s = 0; s < samples; ++s) sum += haar_random_special_unitary(4, static_cast<std::uint64_t>(s)).trace();
  EXPECT_LT(std::abs(sum) / samples, 0.15);
}

TEST(HaarOrthogonal, DeterminantOne) {
  const RealMatrix o = haar_random_special_orthogonal(5, 3);
  EXPECT_NEAR(o.determinant(), 1.0, 1e-12);
  EXPECT_LT((o.transpose() * o - RealMatrix::Identity(5, 5)).cwiseAbs().maxCoeff(), 1e-12);
}
