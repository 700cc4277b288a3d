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

#include "cartan/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "cartan/errors.hpp"

namespace cartan {
namespace {

double entry_scale(const Matrix& m) { return std::max(1.0, m.cwiseAbs().maxCoeff()); }

template <typename Scalar>
using Dense = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

inline double conj_of(double x) { return x; }
inline cplx conj_of(cplx x) { return std::conj(x); }

// Unit-modulus factor ph with x = |x| ph.
inline double unit_phase(double x) { return x < 0 ? -1.0 : 1.0; }
inline cplx unit_phase(cplx x) { return x / std::abs(x); }

template <typename Scalar>
void jacobi(Dense<Scalar> a, RealVector& values, Dense<Scalar>& vectors) {
  const Eigen::Index n = a.rows();
  vectors = Dense<Scalar>::Identity(n, n);
  const double norm = a.norm();
  if (norm == 0.0) {
    values = RealVector::Zero(n);
    return;
  }
  const double tiny = 1e-17 * norm;

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (std::sqrt(off) <= tiny) break;

    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Scalar apq = a(p, q);
        const double r = std::abs(apq);
        if (r <= tiny) {
          a(p, q) = Scalar(0);
          a(q, p) = Scalar(0);
          continue;
        }
        // Rotate the phase of row/column q so that a(p, q) becomes real.
        const Scalar ph = unit_phase(apq);
        const Scalar cph = conj_of(ph);
        a.row(q) *= ph;
        a.col(q) *= cph;
        vectors.col(q) *= cph;
        a(p, q) = r;
        a(q, p) = r;

        const double app = std::real(a(p, p));
        const double aqq = std::real(a(q, q));
        const double theta = (aqq - app) / (2.0 * r);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        a(p, p) = app - t * r;
        a(q, q) = aqq + t * r;
        a(p, q) = Scalar(0);
        a(q, p) = Scalar(0);
        for (Eigen::Index k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const Scalar g = a(k, p);
          const Scalar h = a(k, q);
          a(k, p) = c * g - s * h;
          a(k, q) = s * g + c * h;
          a(p, k) = conj_of(a(k, p));
          a(q, k) = conj_of(a(k, q));
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const Scalar g = vectors(k, p);
          const Scalar h = vectors(k, q);
          vectors(k, p) = c * g - s * h;
          vectors(k, q) = s * g + c * h;
        }
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](auto i, auto j) { return std::real(a(i, i)) < std::real(a(j, j)); });
  values.resize(n);
  Dense<Scalar> sorted(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    values(k) = std::real(a(order[k], order[k]));
    sorted.col(k) = vectors.col(order[k]);
  }
  vectors = std::move(sorted);
}

// Restrict m to span(basis), diagonalize there and rotate the basis.
template <typename Scalar>
RealVector refine_in_subspace(Dense<Scalar>& basis, const Dense<Scalar>& m) {
  Dense<Scalar> restricted = basis.adjoint() * m * basis;
  restricted = (0.5 * (restricted + restricted.adjoint())).eval();
  RealVector values;
  Dense<Scalar> rotation;
  jacobi<Scalar>(restricted, values, rotation);
  basis = (basis * rotation).eval();
  return values;
}

// Contiguous runs of (ascending) values closer than tol.
std::vector<std::pair<Eigen::Index, Eigen::Index>> clusters(const RealVector& values, double tol) {
  std::vector<std::pair<Eigen::Index, Eigen::Index>> out;
  Eigen::Index start = 0;
  for (Eigen::Index k = 1; k <= values.size(); ++k) {
    if (k == values.size() || values(k) - values(k - 1) > tol) {
      out.emplace_back(start, k - start);
      start = k;
    }
  }
  return out;
}

template <typename Scalar>
Dense<Scalar> simdiag(const Dense<Scalar>& a, const Dense<Scalar>& b) {
  // Fixed irrational mixing coefficient; a coincidence of pencil eigenvalues
  // for distinct (a, b) eigenpairs is caught by the cluster refinement.
  constexpr double kMix = 0.7548776662466927;
  const double scale = std::max({1.0, a.norm(), b.norm()});
  const double tol = 1e-6 * scale;

  Dense<Scalar> pencil = a + kMix * b;
  pencil = (0.5 * (pencil + pencil.adjoint())).eval();
  RealVector values;
  Dense<Scalar> v;
  jacobi<Scalar>(pencil, values, v);

  for (auto [start, len] : clusters(values, tol)) {
    if (len < 2) continue;
    Dense<Scalar> w = v.middleCols(start, len);
    const RealVector mu = refine_in_subspace<Scalar>(w, a);
    for (auto [s2, l2] : clusters(mu, tol)) {
      if (l2 < 2) continue;
      Dense<Scalar> w2 = w.middleCols(s2, l2);
      refine_in_subspace<Scalar>(w2, b);
      w.middleCols(s2, l2) = w2;
    }
    v.middleCols(start, len) = w;
  }
  return v;
}

// theta / sin(theta) as a function of c = cos(theta), for c in (-1, 1].
double angle_over_sine(double c) {
  const double u = 1.0 - c;
  if (u < 1e-6) return 1.0 + u / 3.0 + 2.0 * u * u / 15.0;
  return std::acos(std::clamp(c, -1.0, 1.0)) / std::sqrt(u * (2.0 - u));
}

// log of an orthogonal matrix with no eigenvalue near -1, as g(S) K.
RealMatrix log_orthogonal_away_from_minus_one(const RealMatrix& o) {
  const RealMatrix s = 0.5 * (o + o.transpose());
  const RealMatrix k = 0.5 * (o - o.transpose());
  const SymmetricEigen es = eig_symmetric(s);
  RealVector g(es.values.size());
  for (Eigen::Index i = 0; i < g.size(); ++i) g(i) = angle_over_sine(es.values(i));
  return es.vectors * g.asDiagonal() * es.vectors.transpose() * k;
}

}  // namespace

bool is_unitary(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const Matrix d = m.adjoint() * m - Matrix::Identity(m.rows(), m.cols());
  return d.cwiseAbs().maxCoeff() <= tol;
}

bool is_special(const Matrix& m, double tol) {
  return m.rows() == m.cols() && std::abs(determinant(m) - 1.0) <= tol;
}

bool is_symmetric(const Matrix& m, double tol) {
  return m.rows() == m.cols() && (m - m.transpose()).cwiseAbs().maxCoeff() <= tol * entry_scale(m);
}

bool is_real(const Matrix& m, double tol) { return m.imag().cwiseAbs().maxCoeff() <= tol * entry_scale(m); }

bool is_hermitian(const Matrix& m, double tol) {
  return m.rows() == m.cols() && (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol * entry_scale(m);
}

bool is_antihermitian(const Matrix& m, double tol) {
  return m.rows() == m.cols() && (m + m.adjoint()).cwiseAbs().maxCoeff() <= tol * entry_scale(m);
}

double unitarity_defect(const Matrix& u) {
  return (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).norm();
}

cplx determinant(const Matrix& m) { return m.rows() == 0 ? cplx(1.0) : m.partialPivLu().determinant(); }

HermitianEigen eig_hermitian(const Matrix& h) {
  if (!is_hermitian(h, 1e-10)) throw PreconditionError("eig_hermitian: input is not Hermitian");
  HermitianEigen out;
  jacobi<cplx>(0.5 * (h + h.adjoint()), out.values, out.vectors);
  return out;
}

SymmetricEigen eig_symmetric(const RealMatrix& s) {
  if (s.rows() != s.cols() ||
      (s - s.transpose()).cwiseAbs().maxCoeff() > 1e-10 * std::max(1.0, s.cwiseAbs().maxCoeff()))
    throw PreconditionError("eig_symmetric: input is not symmetric");
  SymmetricEigen out;
  jacobi<double>(0.5 * (s + s.transpose()), out.values, out.vectors);
  return out;
}

Matrix simultaneous_diagonalize(const Matrix& a, const Matrix& b) { return simdiag<cplx>(a, b); }

RealMatrix simultaneous_diagonalize(const RealMatrix& a, const RealMatrix& b) { return simdiag<double>(a, b); }

Matrix expm(const Matrix& x) {
  if (!is_antihermitian(x, 1e-10)) throw PreconditionError("expm: input is not anti-Hermitian");
  const HermitianEigen e = eig_hermitian(cplx(0, 1) * x);
  ComplexVector phases(e.values.size());
  for (Eigen::Index k = 0; k < phases.size(); ++k) phases(k) = std::polar(1.0, -e.values(k));
  return e.vectors * phases.asDiagonal() * e.vectors.adjoint();
}

Matrix expi(const Matrix& h) { return expm(cplx(0, 1) * h); }

Matrix logm_unitary(const Matrix& u) {
  if (!is_unitary(u, 1e-8)) throw PreconditionError("logm_unitary: input is not unitary");
  const Matrix c = 0.5 * (u + u.adjoint());
  const Matrix s = cplx(0, -0.5) * (u - u.adjoint());
  const Matrix v = simultaneous_diagonalize(c, s);
  ComplexVector gen(v.cols());
  for (Eigen::Index k = 0; k < v.cols(); ++k) {
    const cplx lambda = v.col(k).dot(u * v.col(k));
    gen(k) = cplx(0, std::arg(lambda));
  }
  Matrix x = v * gen.asDiagonal() * v.adjoint();
  return 0.5 * (x - x.adjoint());
}

SymmetricUnitaryDiag diag_symmetric_unitary(const Matrix& msym) {
  if (!is_unitary(msym, 1e-8) || !is_symmetric(msym, 1e-8))
    throw PreconditionError("diag_symmetric_unitary: input is not a symmetric unitary");
  const RealMatrix re = 0.5 * (msym.real() + msym.real().transpose());
  const RealMatrix im = 0.5 * (msym.imag() + msym.imag().transpose());

  SymmetricUnitaryDiag out;
  out.orthogonal = simultaneous_diagonalize(re, im);
  if (out.orthogonal.determinant() < 0) out.orthogonal.col(0) *= -1.0;

  const Matrix o = out.orthogonal.cast<cplx>();
  const Matrix d = o.transpose() * msym * o;
  out.diagonal.resize(d.rows());
  for (Eigen::Index k = 0; k < d.rows(); ++k) out.diagonal(k) = d(k, k) / std::abs(d(k, k));

  const double residual = (msym - o * out.diagonal.asDiagonal() * o.transpose()).norm();
  if (residual > 1e-8) throw NumericalError("diag_symmetric_unitary: reconstruction failed", residual);
  return out;
}

RealMatrix log_special_orthogonal(const RealMatrix& o) {
  const Eigen::Index n = o.rows();
  const double scale = 1e-8;
  if (o.rows() != o.cols() || (o.transpose() * o - RealMatrix::Identity(n, n)).cwiseAbs().maxCoeff() > scale ||
      std::abs(o.determinant() - 1.0) > scale)
    throw PreconditionError("log_special_orthogonal: input is not in SO(N)");

  const RealMatrix s = 0.5 * (o + o.transpose());
  const RealMatrix k = 0.5 * (o - o.transpose());
  const SymmetricEigen es = eig_symmetric(s);

  // Eigenvalues of S are cos(theta); those near -1 belong to rotations by
  // (almost) pi and need the explicit block treatment below.
  constexpr double kNearMinusOne = 1e-6;
  Eigen::Index w = 0;
  while (w < n && es.values(w) < -1.0 + kNearMinusOne) ++w;
  if (w % 2 == 1 && w < n) ++w;

  RealVector g = RealVector::Zero(n);
  for (Eigen::Index i = w; i < n; ++i) g(i) = angle_over_sine(es.values(i));
  RealMatrix x = es.vectors * g.asDiagonal() * es.vectors.transpose() * k;

  if (w > 0) {
    const RealMatrix basis = es.vectors.leftCols(w);
    const RealMatrix flipped = -(basis.transpose() * o * basis);
    RealMatrix y = log_orthogonal_away_from_minus_one(flipped);
    y = (0.5 * (y - y.transpose())).eval();

    // Real Schur pairs (u, v) of Y with Y u = phi v. In each pair the
    // generator phi + (-pi) reproduces -exp(phi J) = O restricted.
    const SymmetricEigen ey = eig_symmetric(y.transpose() * y);
    std::vector<RealVector> used;
    auto orthogonalize = [&](RealVector v) {
      for (const auto& b : used) v -= b.dot(v) * b;
      return v;
    };
    RealMatrix xw = RealMatrix::Zero(w, w);
    auto first_fresh = [&](auto&& candidates, Eigen::Index count) -> RealVector {
      for (Eigen::Index j = 0; j < count; ++j) {
        RealVector cand = orthogonalize(candidates(j));
        if (cand.norm() >= 0.5) return cand.normalized();
      }
      return {};
    };
    for (Eigen::Index i = w - 1; i >= 0 && static_cast<Eigen::Index>(used.size()) < w; --i) {
      RealVector u = orthogonalize(ey.vectors.col(i));
      if (u.norm() < 0.5) continue;
      u.normalize();
      const RealVector yu = y * u;
      double phi = yu.norm();

      used.push_back(u);
      RealVector v;
      if (phi > 1e-12) {
        RealVector cand = orthogonalize(yu);
        if (cand.norm() >= 0.5 * phi) v = cand.normalized();
      }
      if (v.size() == 0) {
        // Y vanishes on u: any orthogonal partner commutes with Y.
        phi = 0.0;
        v = first_fresh([&](Eigen::Index j) { return RealVector(ey.vectors.col(j)); }, w);
        if (v.size() == 0) v = first_fresh([&](Eigen::Index j) { return RealVector(RealVector::Unit(w, j)); }, w);
      }
      if (v.size() == 0) break;
      used.push_back(v);
      const double alpha = phi - kPi;
      xw += alpha * (v * u.transpose() - u * v.transpose());
    }
    x += basis * xw * basis.transpose();
  }
  return 0.5 * (x - x.transpose());
}

double frobenius_distance(const Matrix& u, const Matrix& v, bool mod_global_phase) {
  if (u.rows() != v.rows() || u.cols() != v.cols())
    throw PreconditionError("frobenius_distance: dimension mismatch");
  if (!mod_global_phase) return (u - v).norm();
  const cplx overlap = (v.adjoint() * u).trace();
  const cplx phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : cplx(1.0);
  return (u - phase * v).norm();
}

Matrix haar_random_special_unitary(int dim, std::uint64_t seed) {
  if (dim < 2) throw PreconditionError("haar_random_special_unitary: dim must be >= 2");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix z(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) z(i, j) = cplx(normal(rng), normal(rng));
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < dim; ++k) q.col(k) *= r(k, k) / std::abs(r(k, k));
  const cplx det = determinant(q);
  q *= std::polar(1.0, -std::arg(det) / dim);
  return q;
}

RealMatrix haar_random_special_orthogonal(int dim, std::uint64_t seed) {
  if (dim < 1) throw PreconditionError("haar_random_special_orthogonal: dim must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  RealMatrix z(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) z(i, j) = normal(rng);
  Eigen::HouseholderQR<RealMatrix> qr(z);
  RealMatrix q = qr.householderQ();
  const RealMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < dim; ++k)
    if (r(k, k) < 0) q.col(k) *= -1.0;
  if (q.determinant() < 0) q.col(0) *= -1.0;
  return q;
}

}  // namespace cartan
