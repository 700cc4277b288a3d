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

#include "cartan/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "cartan/errors.hpp"

namespace cartan {
namespace {

constexpr cplx kI(0, 1);

// Generator H with exp(-i H dt) = step (principal branch, trace dropped).
HamiltonianVector generator_of(const Matrix& step, double dt) {
  const Matrix h = kI * logm_unitary(step) / dt;
  return HamiltonianVector::from_dense(0.5 * (h + h.adjoint()));
}

// Dense Pauli basis and metric weights shared by every evaluation.
struct Frame {
  int qubits;
  std::vector<Matrix> paulis;
  RealVector weights;
  double trace_scale;

  explicit Frame(const PenaltyMetric& metric)
      : qubits(metric.split().qubits), weights(metric.weights()), trace_scale(double(1 << metric.split().qubits)) {
    for (const auto& s : all_strings(qubits))
      if (!s.is_identity()) paulis.push_back(s.matrix());
  }

  Matrix dense(const RealVector& c) const {
    Matrix h = Matrix::Zero(paulis[0].rows(), paulis[0].cols());
    for (Eigen::Index i = 0; i < c.size(); ++i)
      if (c(i) != 0.0) h += c(i) * paulis[static_cast<std::size_t>(i)];
    return h;
  }
  double cost_rate(const RealVector& c) const {
    return std::sqrt(trace_scale * (weights.array() * c.array().square()).sum());
  }
};

struct Candidate {
  RealMatrix coeffs;  // one row per segment
  std::vector<Matrix> steps;
};

class Descent {
 public:
  Descent(const Frame& frame, const Matrix& target, int segments)
      : frame_(frame), target_(target), segments_(segments), dt_(1.0 / segments) {}

  Matrix step(const RealVector& c) const { return expi(-dt_ * frame_.dense(c)); }

  Candidate make(const RealMatrix& coeffs) const {
    Candidate c{coeffs, {}};
    for (int k = 0; k < segments_; ++k) c.steps.push_back(step(coeffs.row(k).transpose()));
    return c;
  }

  double cost(const RealMatrix& coeffs) const {
    double total = 0;
    for (int k = 0; k < segments_; ++k) total += frame_.cost_rate(coeffs.row(k).transpose()) * dt_;
    return total;
  }

  double residual(const Candidate& c) const {
    Matrix u = identity();
    for (const auto& s : c.steps) u = (s * u).eval();
    return frobenius_distance(u, target_, true);
  }

  // Coordinate descent with per-coordinate adaptive steps at fixed lambda.
  void run(Candidate& cand, double lambda, const OptimizeOptions& opt) const {
    const auto cols = cand.coeffs.cols();
    const double step_min = opt.min_step / dt_;
    RealMatrix steps = RealMatrix::Constant(segments_, cols, opt.initial_step / dt_);
    std::vector<double> rates(static_cast<std::size_t>(segments_));
    for (int k = 0; k < segments_; ++k)
      rates[static_cast<std::size_t>(k)] = frame_.cost_rate(cand.coeffs.row(k).transpose());
    double rate_sum = std::accumulate(rates.begin(), rates.end(), 0.0);

    auto objective = [&](double rs, const Matrix& u) {
      const double d = frobenius_distance(u, target_, true);
      return rs * dt_ + lambda * d * d;
    };
    double f = objective(rate_sum, product(cand.steps, 0, segments_));

    for (int sweep = 0; sweep < opt.max_sweeps; ++sweep) {
      const RealMatrix base = cand.coeffs;
      const double f_base = f;
      bool moving = false;
      for (int k = 0; k < segments_; ++k) {
        const auto ks = static_cast<std::size_t>(k);
        const Matrix before = product(cand.steps, 0, k);
        const Matrix after = product(cand.steps, k + 1, segments_);
        for (Eigen::Index j = 0; j < cols; ++j) {
          double& s = steps(k, j);
          if (s < step_min) continue;
          moving = true;
          bool accepted = false;
          for (const double sign : {1.0, -1.0}) {
            RealVector row = cand.coeffs.row(k).transpose();
            row(j) += sign * s;
            const double rate = frame_.cost_rate(row);
            Matrix e = step(row);
            const double ft = objective(rate_sum - rates[ks] + rate, after * e * before);
            if (ft < f) {
              cand.coeffs(k, j) = row(j);
              cand.steps[ks] = std::move(e);
              rate_sum += rate - rates[ks];
              rates[ks] = rate;
              f = ft;
              accepted = true;
              break;
            }
          }
          s *= accepted ? 1.5 : 0.5;
        }
      }
      if (!moving) break;
      // Pattern move (Hooke-Jeeves): extrapolate along the sweep's displacement.
      if (f < f_base) {
        Candidate trial = make(2.0 * cand.coeffs - base);
        std::vector<double> trial_rates(rates.size());
        for (int k = 0; k < segments_; ++k)
          trial_rates[static_cast<std::size_t>(k)] = frame_.cost_rate(trial.coeffs.row(k).transpose());
        const double trial_sum = std::accumulate(trial_rates.begin(), trial_rates.end(), 0.0);
        const double ft = objective(trial_sum, product(trial.steps, 0, segments_));
        if (ft < f) {
          cand = std::move(trial);
          rates = std::move(trial_rates);
          rate_sum = trial_sum;
          f = ft;
        }
      }
    }
  }

  // Absorbs the endpoint error into segment k: its step becomes exactly
  // P_>^+ U P_<^+, generated by the principal log.
  std::optional<Candidate> absorb(const Candidate& cand, int k) const {
    const Matrix wanted =
        product(cand.steps, k + 1, segments_).adjoint() * target_ * product(cand.steps, 0, k).adjoint();
    Candidate out = cand;
    try {
      const HamiltonianVector h = generator_of(wanted, dt_);
      out.coeffs.row(k) = h.coefficients().transpose();
      out.steps[static_cast<std::size_t>(k)] = step(h.coefficients());
    } catch (const Error&) {
      return std::nullopt;
    }
    return out;
  }

 private:
  Matrix identity() const { return Matrix::Identity(target_.rows(), target_.cols()); }

  // steps[end-1] ... steps[begin]
  Matrix product(const std::vector<Matrix>& steps, int begin, int end) const {
    Matrix u = identity();
    for (int i = begin; i < end; ++i) u = (steps[static_cast<std::size_t>(i)] * u).eval();
    return u;
  }

  const Frame& frame_;
  const Matrix& target_;
  int segments_;
  double dt_;
};

ControlPath to_path(const RealMatrix& coeffs, int qubits) {
  ControlPath p;
  p.qubits = qubits;
  const double dt = 1.0 / static_cast<double>(coeffs.rows());
  for (Eigen::Index k = 0; k < coeffs.rows(); ++k)
    p.segments.push_back({HamiltonianVector(qubits, coeffs.row(k).transpose()), dt});
  return p;
}

// Rescales every segment to dt = 1/segments; the cost is invariant.
RealMatrix to_coeffs(const ControlPath& path, int segments, int params) {
  if (static_cast<int>(path.segments.size()) != segments)
    throw PreconditionError("optimize_path: start path has " + std::to_string(path.segments.size()) +
                            " segments, expected " + std::to_string(segments));
  const double dt = 1.0 / segments;
  RealMatrix c(segments, params);
  for (int k = 0; k < segments; ++k) {
    const auto& s = path.segments[static_cast<std::size_t>(k)];
    if (s.h.size() != static_cast<std::size_t>(params)) throw PreconditionError("optimize_path: start path qubit count");
    c.row(k) = (s.h.coefficients() * (s.dt / dt)).transpose();
  }
  return c;
}

struct Outcome {
  RealMatrix coeffs;
  double cost = std::numeric_limits<double>::infinity();
  double residual = std::numeric_limits<double>::infinity();
  bool feasible = false;
};

void consider(Outcome& best, const Descent& descent, const Candidate& c, double tol) {
  const double r = descent.residual(c);
  if (r <= tol) {
    const double cost = descent.cost(c.coeffs);
    if (!best.feasible || cost < best.cost) best = {c.coeffs, cost, r, true};
  } else if (!best.feasible && r < best.residual) {
    best = {c.coeffs, descent.cost(c.coeffs), r, false};
  }
}

std::uint64_t mix(std::uint64_t seed, std::uint64_t salt) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(salt), static_cast<std::uint32_t>(salt >> 32)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (std::uint64_t{out[0]} << 32) | out[1];
}

}  // namespace

double ControlPath::total_time() const noexcept {
  double t = 0;
  for (const auto& s : segments) t += s.dt;
  return t;
}

Matrix evolve(const ControlPath& path) {
  const int dim = 1 << path.qubits;
  Matrix u = Matrix::Identity(dim, dim);
  for (const auto& s : path.segments) {
    if (!(s.dt > 0.0)) throw PreconditionError("evolve: segment durations must be positive");
    u = (expi(-s.dt * s.h.dense()) * u).eval();
  }
  return u;
}

double path_cost(const ControlPath& path, const PenaltyMetric& metric) {
  double total = 0;
  for (const auto& s : path.segments) total += hamiltonian_cost(s.h, metric) * s.dt;
  return total;
}

ControlPath sequential_path(const KakFactors& factors, int segments) {
  if (segments < 3) throw PreconditionError("sequential_path: segments must be >= 3");
  const double dt = 1.0 / segments;
  ControlPath p;
  p.qubits = factors.l.qubits();
  p.segments.push_back({(-1.0 / dt) * factors.m, dt});
  for (int k = 0; k < segments - 2; ++k) p.segments.push_back({(-1.0 / ((segments - 2) * dt)) * factors.z, dt});
  p.segments.push_back({(-1.0 / dt) * factors.l, dt});
  return p;
}

ControlPath concurrent_path(const KakFactors& factors, int segments) {
  if (segments < 1) throw PreconditionError("concurrent_path: segments must be >= 1");
  const Matrix l = factors.l.dense(), m = factors.m.dense();
  const Matrix em = expi(m);
  const Matrix z_moved = em.adjoint() * factors.z.dense() * em;
  auto at = [&](double t) { return Matrix(expi(t * l) * expi(t * m) * expi(t * z_moved)); };
  const double dt = 1.0 / segments;
  ControlPath p;
  p.qubits = factors.l.qubits();
  Matrix prev = at(0.0);
  for (int k = 1; k <= segments; ++k) {
    const Matrix next = at(k * dt);
    p.segments.push_back({generator_of(next * prev.adjoint(), dt), dt});
    prev = next;
  }
  return p;
}

OptimizeResult optimize_path(const Matrix& target, const PenaltyMetric& metric, const OptimizeOptions& opt) {
  if (opt.segments < 3) throw PreconditionError("optimize_path: segments must be >= 3");
  if (opt.restarts < 1) throw PreconditionError("optimize_path: restarts must be >= 1");
  if (target.rows() != metric.split().dim()) throw PreconditionError("optimize_path: target dimension mismatch");
  if (!is_unitary(target, 1e-9) || !is_special(target, 1e-9))
    throw PreconditionError("optimize_path: target must be special unitary");

  const Frame frame(metric);
  const Descent descent(frame, target, opt.segments);
  const int params = static_cast<int>(frame.paulis.size());
  const double dt = 1.0 / opt.segments;

  std::vector<RealMatrix> starts;
  if (opt.start == StartKind::constructed) {
    const CostReport report = optimal_cost(target, metric.split());
    starts.push_back(to_coeffs(concurrent_path(report.factors, opt.segments), opt.segments, params));
    starts.push_back(to_coeffs(sequential_path(report.factors, opt.segments), opt.segments, params));
  }
  for (const auto& p : opt.extra_starts) starts.push_back(to_coeffs(p, opt.segments, params));

  std::vector<Outcome> outcomes(static_cast<std::size_t>(opt.restarts));
  for_each_index(outcomes.size(), opt.exec, [&](std::size_t r) {
    RealMatrix coeffs;
    if (r < starts.size()) {
      coeffs = starts[r];
    } else {
      std::mt19937_64 rng(mix(opt.seed, r));
      std::normal_distribution<double> normal(0.0, 1.0);
      // Past the supplied starts, alternate perturbed and cold restarts.
      const bool cold = starts.empty() || (r - starts.size()) % 2 == 1;
      coeffs = cold ? RealMatrix::Zero(opt.segments, params) : starts[r % starts.size()];
      const double sigma = (cold ? 1.0 : opt.restart_noise) / dt;
      for (Eigen::Index i = 0; i < coeffs.size(); ++i) coeffs.data()[i] += sigma * normal(rng);
    }
    Outcome& best = outcomes[r];
    Candidate cand = descent.make(coeffs);
    consider(best, descent, cand, opt.residual_tol);
    for (const double lambda : opt.lambdas) {
      descent.run(cand, lambda, opt);
      if (descent.residual(cand) <= opt.residual_tol) break;
    }
    consider(best, descent, cand, opt.residual_tol);
    for (int k = 0; k < opt.segments; ++k)
      if (auto polished = descent.absorb(cand, k)) consider(best, descent, *polished, opt.residual_tol);
  });

  std::size_t winner = 0;
  double best_residual = std::numeric_limits<double>::infinity();
  bool any = false;
  for (std::size_t r = 0; r < outcomes.size(); ++r) {
    best_residual = std::min(best_residual, outcomes[r].residual);
    if (outcomes[r].feasible && (!any || outcomes[r].cost < outcomes[winner].cost)) {
      winner = r;
      any = true;
    }
  }
  if (!any) throw ConvergenceError("optimize_path: endpoint residual above tolerance after all restarts", best_residual);

  OptimizeResult out;
  out.path = to_path(outcomes[winner].coeffs, frame.qubits);
  out.cost = outcomes[winner].cost;
  out.residual = outcomes[winner].residual;
  out.restart = static_cast<int>(winner);
  return out;
}

std::vector<double> SweepResult::relative_errors() const {
  std::vector<double> out;
  for (const double c : numeric_costs) {
    const double err = std::abs(c - analytic_cost);
    out.push_back(analytic_cost > 0 ? err / analytic_cost : err);
  }
  return out;
}

bool SweepResult::monotone() const {
  const auto e = relative_errors();
  for (std::size_t i = 1; i < e.size(); ++i)
    if (!(e[i] <= e[i - 1] + 1e-12)) return false;
  return true;
}

std::vector<double> SweepResult::slack_constants() const {
  std::vector<double> out;
  for (std::size_t i = 0; i < epsilon_values.size(); ++i)
    out.push_back((upper_bounds[i] - analytic_cost) / std::sqrt(epsilon_values[i]));
  return out;
}

SweepResult epsilon_sweep(const Matrix& target, const CartanSplit& split, const std::vector<double>& epsilons,
                          const SweepOptions& options) {
  if (epsilons.empty()) throw PreconditionError("epsilon_sweep: no epsilon values");
  for (std::size_t i = 1; i < epsilons.size(); ++i)
    if (!(epsilons[i] < epsilons[i - 1])) throw PreconditionError("epsilon_sweep: epsilons must be descending");

  const CostReport report = optimal_cost(target, split);
  const ControlPath upper = sequential_path(report.factors, options.segments);

  SweepResult out;
  out.analytic_cost = report.cost;
  out.analytic_mod_phase = report.cost;
  const auto dim = static_cast<int>(target.rows());
  for (int k = 1; k < dim; ++k)
    out.analytic_mod_phase =
        std::min(out.analytic_mod_phase, optimal_cost(std::polar(1.0, 2.0 * kPi * k / dim) * target, split).cost);
  std::optional<ControlPath> previous;
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    const PenaltyMetric metric(split, epsilons[i]);
    OptimizeOptions opt;
    opt.segments = options.segments;
    opt.restarts = options.restarts;
    opt.seed = mix(options.seed, i);
    opt.exec = options.exec;
    if (previous) opt.extra_starts.push_back(*previous);
    // Room for every supplied start plus one perturbed and one cold restart.
    opt.restarts = std::max(opt.restarts, 2 + static_cast<int>(opt.extra_starts.size()) + 2);

    out.epsilon_values.push_back(epsilons[i]);
    out.upper_bounds.push_back(path_cost(upper, metric));
    try {
      const OptimizeResult r = optimize_path(target, metric, opt);
      out.numeric_costs.push_back(r.cost);
      out.endpoint_residuals.push_back(r.residual);
      out.converged.push_back(true);
      previous = r.path;
    } catch (const ConvergenceError& e) {
      out.numeric_costs.push_back(std::numeric_limits<double>::quiet_NaN());
      out.endpoint_residuals.push_back(e.best_residual());
      out.converged.push_back(false);
    }
    const double c = out.numeric_costs.back();
    out.sandwich_ok.push_back(out.converged.back() && c <= out.upper_bounds.back() + 1e-12 &&
                              c >= out.analytic_mod_phase - out.lower_tol);
  }
  return out;
}

}  // namespace cartan
