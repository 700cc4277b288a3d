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

#include "cartan/cost.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "cartan/errors.hpp"

namespace cartan {
namespace {

// Round to nearest, exact halves toward zero.
long round_half_toward_zero(double y) {
  const double f = std::floor(y);
  const double frac = y - f;
  if (frac > 0.5) return static_cast<long>(f) + 1;
  if (frac < 0.5) return static_cast<long>(f);
  return y > 0 ? static_cast<long>(f) : static_cast<long>(f) + 1;
}

double distance_to(std::span<const double> x, const std::vector<int>& m, double scale) {
  double s = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double d = x[k] - scale * m[k];
    s += d * d;
  }
  return std::sqrt(s);
}

}  // namespace

LatticePoint closest_lattice_point(std::span<const double> x, const SumZeroLattice& lattice) {
  if (static_cast<int>(x.size()) != lattice.dim) throw PreconditionError("closest_lattice_point: dimension mismatch");
  const double sum = std::accumulate(x.begin(), x.end(), 0.0);
  if (std::abs(sum) > 1e-9) throw PreconditionError("closest_lattice_point: input does not sum to zero");

  const std::size_t n = x.size();
  std::vector<int> m(n);
  std::vector<double> residual(n);
  long deficiency = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double y = x[k] / lattice.scale;
    m[k] = static_cast<int>(round_half_toward_zero(y));
    residual[k] = y - m[k];
    deficiency += m[k];
  }
  if (deficiency != 0) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    if (deficiency > 0) {
      // Undo the roundings that went up the furthest.
      std::stable_sort(order.begin(), order.end(), [&](auto i, auto j) { return residual[i] < residual[j]; });
      for (long k = 0; k < deficiency; ++k) --m[order[static_cast<std::size_t>(k)]];
    } else {
      std::stable_sort(order.begin(), order.end(), [&](auto i, auto j) { return residual[i] > residual[j]; });
      for (long k = 0; k < -deficiency; ++k) ++m[order[static_cast<std::size_t>(k)]];
    }
  }
  return {m, distance_to(x, m, lattice.scale)};
}

LatticePoint closest_lattice_point_bruteforce(std::span<const double> x, int radius, double scale) {
  const int n = static_cast<int>(x.size());
  if (n < 1) throw PreconditionError("closest_lattice_point_bruteforce: empty input");
  std::vector<int> current(static_cast<std::size_t>(n), 0);
  std::vector<int> best;
  double best_sq = std::numeric_limits<double>::infinity();

  auto recurse = [&](auto&& self, int k, int partial_sum, double partial_sq) -> void {
    if (partial_sq >= best_sq) return;
    const int remaining = n - k;
    if (std::abs(partial_sum) > remaining * radius) return;
    if (k == n - 1) {
      const int last = -partial_sum;
      const double d = x[static_cast<std::size_t>(k)] - scale * last;
      const double total = partial_sq + d * d;
      if (total < best_sq) {
        best_sq = total;
        current[static_cast<std::size_t>(k)] = last;
        best = current;
      }
      return;
    }
    for (int v = -radius; v <= radius; ++v) {
      current[static_cast<std::size_t>(k)] = v;
      const double d = x[static_cast<std::size_t>(k)] - scale * v;
      self(self, k + 1, partial_sum + v, partial_sq + d * d);
    }
  };
  recurse(recurse, 0, 0, 0.0);
  return {best, std::sqrt(best_sq)};
}

CostReport optimal_cost(const Matrix& u, const CartanSplit& split) {
  const SpecialProjection proj = project_to_special(u);
  const KakFactors raw = kak_decompose(proj.special, split);

  CostReport report;
  report.removed_phase = proj.removed_phase;
  report.eigenphases = eigenphases(raw);
  const RealVector& x = report.eigenphases.phases;
  const LatticePoint lp = closest_lattice_point(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())),
                                                SumZeroLattice{static_cast<int>(x.size())});
  report.lattice_point = lp.m;
  report.shifted_phases = x;
  for (Eigen::Index k = 0; k < x.size(); ++k) report.shifted_phases(k) -= kPi * lp.m[static_cast<std::size_t>(k)];
  report.cost = report.shifted_phases.norm();

  std::vector<int> shift(lp.m.size());
  for (std::size_t k = 0; k < lp.m.size(); ++k) shift[static_cast<std::size_t>(report.eigenphases.order[k])] = lp.m[k];
  report.factors = shift_phases(raw, split, shift);
  return report;
}

double single_qubit_cost(double /*x*/, double z, double /*y*/) {
  const double two_pi = 2.0 * kPi;
  const double nearest = std::round(z / two_pi);
  double best = std::abs(z);
  for (double m : {nearest - 1.0, nearest, nearest + 1.0}) {
    if (m == 0.0) continue;
    best = std::min(best, std::abs(z - m * two_pi));
  }
  return best / std::sqrt(2.0);
}

double single_qubit_cost_standard(double z) {
  const double nearest = std::round(z / kPi);
  double best = std::abs(z);
  for (double m : {nearest - 1.0, nearest, nearest + 1.0}) best = std::min(best, std::abs(z - m * kPi));
  return std::sqrt(2.0) * best;
}

InvarianceReport cheap_invariance_check(const Matrix& u, const CartanSplit& split, int samples, std::uint64_t seed,
                                        double tol) {
  InvarianceReport report;
  report.base_cost = optimal_cost(u, split).cost;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int s = 0; s < samples; ++s) {
    HamiltonianVector k1(split.qubits), k2(split.qubits);
    for (const auto& str : split.l) {
      k1[str] = normal(rng);
      k2[str] = normal(rng);
    }
    const Matrix dressed = expi(k1.dense()) * u * expi(k2.dense());
    const double dev = std::abs(optimal_cost(dressed, split).cost - report.base_cost);
    report.max_deviation = std::max(report.max_deviation, dev);
    if (dev > tol) ++report.violations;
  }
  report.ok = report.violations == 0;
  return report;
}

}  // namespace cartan
