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
#include <optional>
#include <vector>

#include "cartan/cost.hpp"
#include "cartan/exec.hpp"
#include "cartan/metric.hpp"

namespace cartan {

struct ControlSegment {
  HamiltonianVector h;
  double dt;
};

/// Piecewise-constant control. evolve() applies later segments on the left.
struct ControlPath {
  int qubits = 1;
  std::vector<ControlSegment> segments;

  double total_time() const noexcept;
};

/// prod_k exp(-i H_k dt_k), later segments on the left.
Matrix evolve(const ControlPath& path);

/// sum_k hamiltonian_cost(H_k) dt_k.
double path_cost(const ControlPath& path, const PenaltyMetric& metric);

/// The three-leg path e^{iL} e^{iZ} e^{iM} of the optimal factors: one M
/// leg, segments - 2 equal Z legs, one L leg. Cost
/// sqrt(eps) (|L| + |M|) + |Z|.
ControlPath sequential_path(const KakFactors& factors, int segments);

/// U(t) = e^{itL} e^{itM} e^{itZ'}, Z' = e^{-iM} Z e^{iM}: the l motion runs
/// during the z motion, so the cost integrand is
/// sqrt(eps |L + Ad M|^2 + |Z|^2). Cut into equal segments whose generators
/// are exact principal logs, so the endpoint is met exactly.
ControlPath concurrent_path(const KakFactors& factors, int segments);

enum class StartKind { constructed, cold };

struct OptimizeOptions {
  int segments = 8;
  int restarts = 4;
  std::uint64_t seed = 1;
  double residual_tol = 1e-4;
  std::vector<double> lambdas{10.0, 1e2, 1e3, 1e4};
  int max_sweeps = 600;
  /// Initial and final coordinate step, in units of 1/dt.
  double initial_step = 1e-2;
  double min_step = 1e-9;
  /// Restarts past the supplied starts alternate between a supplied start
  /// perturbed by this Gaussian noise (units of 1/dt) and a cold start.
  double restart_noise = 5e-2;
  StartKind start = StartKind::constructed;
  /// Extra starting paths (for example the previous sweep point).
  std::vector<ControlPath> extra_starts;
  Exec exec = Exec::parallel;
};

struct OptimizeResult {
  ControlPath path;
  double cost = 0;      // path cost, penalty excluded
  double residual = 0;  // frobenius_distance(evolve(path), target, mod phase)
  int restart = 0;      // index of the winning restart
};

/// Multi-start coordinate descent on
///   path_cost + lambda * frobenius_distance(evolve, target)^2
/// with lambda raised along the schedule until the endpoint residual drops
/// below the tolerance, then the residual is absorbed into one segment.
/// Returns the cheapest endpoint-feasible path seen. T = 1, dt = 1/segments.
OptimizeResult optimize_path(const Matrix& target, const PenaltyMetric& metric, const OptimizeOptions& options);

struct SweepResult {
  std::vector<double> epsilon_values;  // descending
  std::vector<double> numeric_costs;
  double analytic_cost = 0;
  /// min over central elements w of optimal_cost(w U). The endpoint is
  /// matched up to global phase, so this is the lower reference.
  double analytic_mod_phase = 0;
  std::vector<double> endpoint_residuals;
  /// Cost of the sequential feasible path at each epsilon (upper bound).
  std::vector<double> upper_bounds;
  std::vector<bool> converged;
  /// numeric <= upper bound and numeric >= analytic_mod_phase - lower_tol.
  std::vector<bool> sandwich_ok;
  double lower_tol = 1e-3;

  std::vector<double> relative_errors() const;
  /// |numeric - analytic| / analytic does not increase as epsilon shrinks.
  bool monotone() const;
  /// Empirical constant K with upper - analytic = K sqrt(eps), per point.
  std::vector<double> slack_constants() const;
};

struct SweepOptions {
  int segments = 8;
  int restarts = 4;
  std::uint64_t seed = 1;
  Exec exec = Exec::parallel;
};

/// Runs optimize_path at each epsilon, largest first, seeding every run with
/// the previous optimum so the numeric costs cannot increase. Non-converged
/// points are recorded, not thrown.
SweepResult epsilon_sweep(const Matrix& target, const CartanSplit& split, const std::vector<double>& epsilons,
                          const SweepOptions& options);

}  // namespace cartan
