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

// One pass/fail line per acceptance criterion. Tolerances and corpus sizes
// are fixed here; `--slow` adds the SU(4) sweep to criterion 6.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "cartan/batch.hpp"
#include "cartan/errors.hpp"
#include "cartan/geodesic.hpp"
#include "cartan/metric.hpp"
#include "support/corpus.hpp"

using namespace cartan;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
  std::vector<std::string> sublines;
};

char buf[512];

template <typename... Args>
std::string format(const char* f, Args... args) {
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// 1. KAK round trip.
Outcome kak_round_trip() {
  const CartanSplit two_local = builtin_split(2, SplitKind::two_local);
  const CartanSplit ai = builtin_split(3, SplitKind::ai);
  std::vector<Matrix> su4 = haar_corpus(4, 1000, 1, Exec::parallel);
  for (std::uint64_t s = 0; s < 100; ++s) su4.push_back(cartan::testing::degenerate_su4(s));
  std::vector<Matrix> su8 = haar_corpus(8, 100, 5001, Exec::parallel);
  for (std::uint64_t s = 0; s < 20; ++s) su8.push_back(cartan::testing::degenerate_ai(8, s + 1));

  double worst4 = 0, worst8 = 0;
  int failures = 0;
  auto run = [&](const std::vector<Matrix>& corpus, const CartanSplit& split, double& worst) {
    std::vector<double> residual(corpus.size(), INFINITY);
    for_each_index(corpus.size(), Exec::parallel, [&](std::size_t i) {
      try {
        residual[i] = frobenius_distance(reconstruct(kak_decompose(corpus[i], split)), corpus[i], false);
      } catch (const Error&) {
      }
    });
    for (const double r : residual) {
      worst = std::max(worst, r);
      if (!(r <= 1e-8)) ++failures;
    }
  };
  run(su4, two_local, worst4);
  run(su8, ai, worst8);
  return {failures == 0,
          format("%zu SU(4) two_local (100 degenerate) max residual %.2e; %zu SU(8) ai (20 degenerate) max %.2e; "
                 "%d over 1e-8",
                 su4.size(), worst4, su8.size(), worst8, failures),
          {}};
}

// 2. Fast closest point versus exhaustive search.
Outcome lattice_oracle() {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> spread(-1.5 * kPi, 1.5 * kPi);
  double worst = 0;
  int count = 0;
  for (int n : {2, 4, 8}) {
    std::vector<RealVector> targets;
    for (int t = 0; t < 1000; ++t) {
      RealVector x(n);
      for (int i = 0; i < n; ++i) x(i) = spread(rng);
      x.array() -= x.mean();
      targets.push_back(x);
    }
    const auto fast = closest_point_batch(targets, {n}, Exec::parallel);
    const auto brute = bruteforce_batch(targets, 3, Exec::parallel);
    for (std::size_t i = 0; i < targets.size(); ++i, ++count)
      worst = std::max(worst, std::abs(fast[i].distance - brute[i].distance));
  }
  return {worst <= 1e-12, format("%d targets over N = 2, 4, 8; max |fast - brute| %.2e", count, worst), {}};
}

// 3. Single-qubit specialization and the convention mapping.
Outcome single_qubit() {
  int bad_grid = 0, bad_periodic = 0;
  for (int k = -100; k <= 100; ++k) {
    const double z = k * kPi / 100;
    if (single_qubit_cost(0.0, z, 0.0) != std::abs(z) / std::sqrt(2.0)) ++bad_grid;
  }
  double worst_pipeline = 0, worst_mapping = 0;
  const CartanSplit split = builtin_split(1, SplitKind::single_x);
  const Matrix zmat = PauliString::parse("Z").matrix();
  for (int k = -400; k <= 400; ++k) {
    const double z = k * kPi / 100;
    double periodic = std::abs(z);
    for (int m = -4; m <= 4; ++m) periodic = std::min(periodic, std::abs(z - 2 * m * kPi));
    if (std::abs(single_qubit_cost(0.0, z, 0.0) - periodic / std::sqrt(2.0)) > 1e-15) ++bad_periodic;

    const double cost = optimal_cost(expi(-z * zmat), split).cost;
    double standard = std::abs(z);
    for (int m = -8; m <= 8; ++m) standard = std::min(standard, std::abs(z - m * kPi));
    worst_pipeline = std::max(worst_pipeline, std::abs(cost - std::sqrt(2.0) * standard));
    worst_mapping = std::max(worst_mapping, std::abs(cost - single_qubit_cost(0.0, 2.0 * z, 0.0)));
  }
  const bool pass = bad_grid == 0 && bad_periodic == 0 && worst_pipeline <= 1e-9 && worst_mapping <= 1e-9;
  return {pass,
          format("grid |z|/sqrt2 exact misses %d; periodic misses %d; pipeline vs sqrt2 min|z - m pi| %.2e; "
                 "cost(z) = closed form(2z) %.2e",
                 bad_grid, bad_periodic, worst_pipeline, worst_mapping),
          {}};
}

// 4. Canonical two-qubit classes.
Outcome canonical_classes() {
  const CartanSplit split = builtin_split(2, SplitKind::two_local);
  struct Case {
    const char* name;
    Matrix u;
    double expected;
  };
  const std::vector<Case> cases{
      {"CNOT class", cartan::testing::canonical_gate(kPi / 4, 0, 0), kPi / 2},
      {"SWAP class", cartan::testing::canonical_gate(kPi / 4, kPi / 4, kPi / 4), std::sqrt(3.0) / 2 * kPi},
  };
  bool pass = true;
  std::string detail;
  std::vector<std::string> sub;
  for (const auto& c : cases) {
    const CostReport r = optimal_cost(c.u, split);
    const RealVector& x = r.eigenphases.phases;
    const double brute =
        closest_lattice_point_bruteforce(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())), 3)
            .distance;
    const InvarianceReport inv = cheap_invariance_check(c.u, split, 100, 2024);
    const bool ok = std::abs(r.cost - c.expected) <= 1e-9 && std::abs(brute - c.expected) <= 1e-9 &&
                    inv.max_deviation <= 1e-8;
    pass = pass && ok;
    sub.push_back(format("%s: cost %.17g (brute force %.17g), 100 dressings max deviation %.2e %s", c.name, r.cost,
                         brute, inv.max_deviation, ok ? "pass" : "FAIL"));
  }
  detail = "pi/2 and (sqrt3/2) pi within 1e-9, dressing deviation <= 1e-8";
  return {pass, detail, sub};
}

// 5. Coordinate Gram block structure.
Outcome gram_structure() {
  const double eps = 0.01;
  struct Agg {
    double g12_23 = 0, g13 = 0, central = 0, g11 = 0, g13_cross = 0, g33_min = INFINITY;
    bool g33 = true;
  } agg;
  int points = 0;
  for (const auto& [kind, count] : {std::pair{SplitKind::single_x, 20}, std::pair{SplitKind::two_local, 10}}) {
    const CartanSplit split = builtin_split(kind == SplitKind::single_x ? 1 : 2, kind);
    const PenaltyMetric metric(split, eps);
    for (int i = 0; i < count; ++i, ++points) {
      const BasePoint base = random_base_point(split, 9000 + static_cast<std::uint64_t>(i), 1.0);
      const GramStructureReport r = verify_gram_structure(pullback_gram(base, metric, 1e-4), metric);
      agg.g12_23 = std::max({agg.g12_23, r.g12_max, r.g23_max});
      agg.g13 = std::max(agg.g13, r.g13_max);
      agg.central = std::max(agg.central, r.central_deviation);
      agg.g11 = std::max(agg.g11, r.g11_relative_deviation);
      agg.g13_cross = std::max(agg.g13_cross, r.g13_cross_term_deviation);
      agg.g33_min = std::min(agg.g33_min, r.g33_min_eigenvalue);
      agg.g33 = agg.g33 && r.g33_ok;
    }
  }
  const bool block_diag = std::max(agg.g12_23, agg.g13) <= 1e-4;
  const bool pass = block_diag && agg.central <= 1e-5 && agg.g11 <= 1e-4;
  std::vector<std::string> sub{
      format("G12, G23 <= 1e-4: max %.2e %s", agg.g12_23, agg.g12_23 <= 1e-4 ? "pass" : "FAIL"),
      format("G13 <= 1e-4: max %.2e %s", agg.g13, agg.g13 <= 1e-4 ? "pass" : "FAIL"),
      format("G22 = I within 1e-5: max %.2e %s", agg.central, agg.central <= 1e-5 ? "pass" : "FAIL"),
      format("G11 = eps BCH^T BCH within 1e-4 relative: max %.2e %s", agg.g11, agg.g11 <= 1e-4 ? "pass" : "FAIL"),
      format("info: G13 equals the analytic cross term eps <BCH_L e_i, P_l Ad BCH_M e_j>: max rel dev %.2e", agg.g13_cross),
      format("info: G33 PSD and Z=0 form: min eigenvalue %.2e %s", agg.g33_min, agg.g33 ? "pass" : "FAIL"),
  };
  return {pass, format("%d base points (20 single_x, 10 two_local), eps = %g, fd step 1e-4", points, eps), sub};
}

// 6. Epsilon sweeps.
Outcome sweeps(bool slow) {
  const CartanSplit split = builtin_split(1, SplitKind::single_x);
  const std::vector<double> eps{1e-1, 1e-2, 1e-3};
  bool pass = true;
  std::vector<std::string> sub;
  for (std::uint64_t t = 0; t < 5; ++t) {
    const Matrix u = haar_random_special_unitary(2, 300 + t);
    SweepOptions opt;
    opt.seed = 17 + t;
    const SweepResult r = epsilon_sweep(u, split, eps, opt);
    const auto rel = r.relative_errors();
    const bool sandwich = std::all_of(r.sandwich_ok.begin(), r.sandwich_ok.end(), [](bool b) { return b; });
    const bool ok = r.monotone() && rel.back() <= 0.05 && sandwich;
    pass = pass && ok;
    sub.push_back(format("target %d analytic %.6f rel err %.2e %.2e %.2e monotone %s sandwich %s %s", int(t),
                         r.analytic_cost, rel[0], rel[1], rel[2], r.monotone() ? "yes" : "no",
                         sandwich ? "yes" : "no", ok ? "pass" : "FAIL"));
  }
  if (slow) {
    const CartanSplit two_local = builtin_split(2, SplitKind::two_local);
    SweepOptions opt;
    opt.seed = 99;
    const SweepResult r = epsilon_sweep(haar_random_special_unitary(4, 404), two_local, eps, opt);
    const auto rel = r.relative_errors();
    const bool ok = r.monotone() && rel.back() <= 0.20;
    pass = pass && ok;
    sub.push_back(format("SU(4) two_local analytic %.6f rel err %.2e %.2e %.2e (tolerance 20%%) %s", r.analytic_cost,
                         rel[0], rel[1], rel[2], ok ? "pass" : "FAIL"));
  } else {
    sub.push_back("SU(4) sweep skipped (run with --slow)");
  }
  return {pass, "5 single-qubit targets, eps 1e-1 1e-2 1e-3, within 5% at 1e-3, monotone", sub};
}

// 7. BCH first-order defect slope.
Outcome bch_order() {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto random_h = [&](double norm) {
    HamiltonianVector h(1);
    for (auto& c : h.coefficients()) c = normal(rng);
    h *= norm / trace_norm(h);
    return h;
  };
  double lo = INFINITY, hi = -INFINITY;
  for (int i = 0; i < 50; ++i) {
    const HamiltonianVector l = random_h(unit(rng)), p = random_h(1.0);
    const HamiltonianVector b = bch_operator(l, p);
    const Matrix el_inv = expi(l.dense()).adjoint();
    auto defect = [&](double d) { return (expi((l + d * p).dense()) * el_inv - expi(d * b.dense())).norm(); };
    const double slope = std::log2(defect(1e-2) / defect(5e-3));
    lo = std::min(lo, slope);
    hi = std::max(hi, slope);
  }
  return {lo >= 1.9 && hi <= 2.1, format("50 random 1-qubit pairs, slope range [%.4f, %.4f]", lo, hi), {}};
}

}  // namespace

int main(int argc, char** argv) {
  bool slow = false;
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--slow") == 0) slow = true;
    else if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) only = std::atoi(argv[++i]);
  }
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "KAK round trip", 60, kak_round_trip},
      {2, "lattice oracle equivalence", 10, lattice_oracle},
      {3, "single-qubit specialization", 5, single_qubit},
      {4, "canonical two-qubit values", 60, canonical_classes},
      {5, "coordinate Gram block structure", 120, gram_structure},
      {6, "epsilon -> 0 convergence", 600, [slow] { return sweeps(slow); }},
      {7, "BCH finite-difference order", 5, bch_order},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what(), {}};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool pass = o.pass && secs <= c.budget_s;
    if (!pass) ++failed;
    std::printf("criterion %d: %s  %s: %s [%.2f s, budget %.0f s]\n", c.id, pass ? "PASS" : "FAIL", c.name,
                o.detail.c_str(), secs, c.budget_s);
    for (const auto& s : o.sublines) std::printf("    %s\n", s.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
