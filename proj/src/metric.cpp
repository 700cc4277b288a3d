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

#include "cartan/metric.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "cartan/errors.hpp"

namespace cartan {
namespace {

double max_abs(const RealMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double relative_deviation(const RealMatrix& measured, const RealMatrix& predicted) {
  const double scale = std::max(max_abs(predicted), 1e-300);
  return max_abs(measured - predicted) / scale;
}

HamiltonianVector adjoint_action(const Matrix& u, const HamiltonianVector& h) {
  const Matrix c = u * h.dense() * u.adjoint();
  return HamiltonianVector::from_dense(0.5 * (c + c.adjoint()));
}

RealMatrix gram_of(const std::vector<HamiltonianVector>& tangents, const PenaltyMetric& metric) {
  const auto n = static_cast<Eigen::Index>(tangents.size());
  RealMatrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i; j < n; ++j) {
      g(i, j) = metric_inner(tangents[static_cast<std::size_t>(i)], tangents[static_cast<std::size_t>(j)], metric);
      g(j, i) = g(i, j);
    }
  return g;
}

}  // namespace

PenaltyMetric::PenaltyMetric(CartanSplit split, double epsilon) : split_(std::move(split)), epsilon_(epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw PreconditionError("penalty metric: epsilon must lie in (0, 1]");
  weights_ = RealVector::Ones((Eigen::Index{1} << (2 * split_.qubits)) - 1);
  for (const auto& s : split_.l) weights_(static_cast<Eigen::Index>(s.index())) = epsilon;
}

double metric_inner(const HamiltonianVector& a, const HamiltonianVector& b, const PenaltyMetric& metric) {
  if (a.qubits() != metric.split().qubits || b.qubits() != metric.split().qubits)
    throw PreconditionError("metric_inner: qubit counts differ");
  return static_cast<double>(a.dim()) * (a.coefficients().array() * metric.weights().array() * b.coefficients().array()).sum();
}

double hamiltonian_cost(const HamiltonianVector& h, const PenaltyMetric& metric) {
  return std::sqrt(metric_inner(h, h, metric));
}

HamiltonianVector bch_operator(const HamiltonianVector& l, const HamiltonianVector& p, int terms) {
  if (terms < 1) throw PreconditionError("bch_operator: terms must be >= 1");
  if (l.qubits() != p.qubits()) throw PreconditionError("bch_operator: qubit counts differ");
  if (trace_norm(l) > 2.0) throw PreconditionError("bch_operator: |L| exceeds the series guard of 2");
  const Matrix lm = l.dense();
  const cplx i(0, 1);
  Matrix term = p.dense();
  Matrix sum = term;
  double factorial = 1.0;
  for (int k = 1; k < terms; ++k) {
    term = (i * (lm * term - term * lm)).eval();
    factorial *= static_cast<double>(k + 1);
    sum += term / factorial;
  }
  return HamiltonianVector::from_dense(0.5 * (sum + sum.adjoint()));
}

BasePoint random_base_point(const CartanSplit& split, std::uint64_t seed, double max_norm) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto in_l = [&] {
    HamiltonianVector h(split.qubits);
    for (const auto& s : split.l) h[s] = normal(rng);
    const double n = trace_norm(h);
    if (n > 0) h *= max_norm * (1.0 - unit(rng)) / n;
    return h;
  };
  BasePoint b{in_l(), HamiltonianVector(split.qubits), HamiltonianVector(split.qubits)};
  const double z_scale = max_norm / std::sqrt(double(std::max<std::size_t>(split.z.size(), 1)) * split.dim());
  for (const auto& s : split.z) b.z[s] = z_scale * (2.0 * unit(rng) - 1.0);
  b.m = in_l();
  return b;
}

Matrix coordinate_unitary(const BasePoint& base) {
  return expi(base.l.dense()) * expi(base.z.dense()) * expi(base.m.dense());
}

std::vector<HamiltonianVector> coordinate_basis(const std::vector<PauliString>& strings) {
  std::vector<HamiltonianVector> out;
  out.reserve(strings.size());
  for (const auto& s : strings) out.push_back(HamiltonianVector::single(s, 1.0 / std::sqrt(double(1 << s.qubits()))));
  return out;
}

CoordinateGram pullback_gram(const BasePoint& base, const PenaltyMetric& metric, double fd_step, Exec exec) {
  if (!(fd_step >= 1e-6 && fd_step <= 1e-3)) throw PreconditionError("pullback_gram: fd_step must lie in [1e-6, 1e-3]");
  const CartanSplit& split = metric.split();
  const auto l_basis = coordinate_basis(split.l);
  const auto z_basis = coordinate_basis(split.z);

  CoordinateGram out;
  out.base = base;
  out.l_dim = static_cast<int>(l_basis.size());
  out.z_dim = static_cast<int>(z_basis.size());
  out.fd_step = fd_step;
  const std::size_t total = 2 * l_basis.size() + z_basis.size();

  const Matrix u_inv = coordinate_unitary(base).adjoint();
  auto perturbed = [&](std::size_t dir, double step) {
    BasePoint p = base;
    if (dir < l_basis.size())
      p.l += step * l_basis[dir];
    else if (dir < l_basis.size() + z_basis.size())
      p.z += step * z_basis[dir - l_basis.size()];
    else
      p.m += step * l_basis[dir - l_basis.size() - z_basis.size()];
    return coordinate_unitary(p);
  };
  auto tangent = [&](std::size_t dir, double step) {
    const Matrix du = (perturbed(dir, step) - perturbed(dir, -step)) / (2.0 * step);
    const Matrix h = cplx(0, 1) * du * u_inv;
    return HamiltonianVector::from_dense(0.5 * (h + h.adjoint()));
  };

  std::vector<HamiltonianVector> tangents(total, HamiltonianVector(split.qubits));
  std::vector<double> richardson(total, 0.0);
  for_each_index(total, exec, [&](std::size_t dir) {
    tangents[dir] = tangent(dir, fd_step);
    const auto half = tangent(dir, 0.5 * fd_step);
    richardson[dir] = (tangents[dir].coefficients() - half.coefficients()).cwiseAbs().maxCoeff();
  });
  out.richardson_residual = *std::max_element(richardson.begin(), richardson.end());
  if (out.richardson_residual > 1e-4)
    throw NumericalError("pullback_gram: finite-difference noise dominates", out.richardson_residual);
  out.gram = gram_of(tangents, metric);
  return out;
}

RealMatrix analytic_gram(const BasePoint& base, const PenaltyMetric& metric) {
  const CartanSplit& split = metric.split();
  const auto l_basis = coordinate_basis(split.l);
  const auto z_basis = coordinate_basis(split.z);
  const Matrix el = expi(base.l.dense());
  const Matrix elz = el * expi(base.z.dense());

  std::vector<HamiltonianVector> tangents;
  for (const auto& e : l_basis) tangents.push_back(bch_operator(base.l, e));
  for (const auto& e : z_basis) tangents.push_back(adjoint_action(el, e));
  for (const auto& e : l_basis) tangents.push_back(adjoint_action(elz, bch_operator(base.m, e)));
  return gram_of(tangents, metric);
}

GramStructureReport verify_gram_structure(const CoordinateGram& gram, const PenaltyMetric& metric,
                                     const GramTolerances& tol) {
  GramStructureReport r;
  const CartanSplit& split = metric.split();
  const double eps = metric.epsilon();
  const auto l_basis = coordinate_basis(split.l);

  r.g12_max = max_abs(gram.block(0, 1));
  r.g13_max = max_abs(gram.block(0, 2));
  r.g23_max = max_abs(gram.block(1, 2));
  r.block_diagonal_ok = std::max({r.g12_max, r.g13_max, r.g23_max}) <= tol.off_diagonal;
  r.z_decoupled_ok = std::max(r.g12_max, r.g23_max) <= tol.off_diagonal;

  r.central_deviation = max_abs(gram.block(1, 1) - RealMatrix::Identity(gram.z_dim, gram.z_dim));
  r.central_ok = r.central_deviation <= tol.central;

  std::vector<HamiltonianVector> bch_l, bch_m;
  for (const auto& e : l_basis) {
    bch_l.push_back(bch_operator(gram.base.l, e));
    bch_m.push_back(bch_operator(gram.base.m, e));
  }
  const auto n_l = static_cast<Eigen::Index>(l_basis.size());
  RealMatrix g11(n_l, n_l), g33_zero(n_l, n_l);
  for (Eigen::Index i = 0; i < n_l; ++i)
    for (Eigen::Index j = 0; j < n_l; ++j) {
      g11(i, j) = eps * trace_inner_product(bch_l[static_cast<std::size_t>(i)], bch_l[static_cast<std::size_t>(j)]);
      g33_zero(i, j) = eps * trace_inner_product(bch_m[static_cast<std::size_t>(i)], bch_m[static_cast<std::size_t>(j)]);
    }
  r.g11_relative_deviation = relative_deviation(gram.block(0, 0), g11);
  r.g11_ok = r.g11_relative_deviation <= tol.relative;

  const RealMatrix g33 = gram.block(2, 2);
  const SymmetricEigen e33 = eig_symmetric(0.5 * (g33 + g33.transpose()));
  r.g33_min_eigenvalue = e33.values.size() ? e33.values.minCoeff() : 0.0;
  r.g33_max_eigenvalue = e33.values.size() ? e33.values.maxCoeff() : 0.0;
  r.z_is_zero = gram.base.z.coefficients().cwiseAbs().maxCoeff() <= 1e-14;
  if (r.z_is_zero) {
    r.g33_relative_deviation = relative_deviation(g33, g33_zero);
    r.g33_ok = r.g33_relative_deviation <= tol.relative && r.g33_min_eigenvalue >= -tol.psd;
  } else {
    r.g33_ok = r.g33_min_eigenvalue >= -tol.psd;
  }

  const Matrix elz = expi(gram.base.l.dense()) * expi(gram.base.z.dense());
  RealMatrix g13(n_l, n_l);
  for (Eigen::Index j = 0; j < n_l; ++j) {
    const auto moved = project(adjoint_action(elz, bch_m[static_cast<std::size_t>(j)]), split, Subspace::l);
    for (Eigen::Index i = 0; i < n_l; ++i)
      g13(i, j) = eps * trace_inner_product(bch_l[static_cast<std::size_t>(i)], moved);
  }
  r.g13_cross_term_deviation = max_abs(gram.block(0, 2) - g13) / std::max(max_abs(g13), eps);
  r.g13_cross_term_ok = r.g13_cross_term_deviation <= tol.relative;
  return r;
}

}  // namespace cartan
