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

#include "cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "cartan/batch.hpp"
#include "cartan/errors.hpp"
#include "cartan/io.hpp"

namespace cartan::cli {
namespace {

struct Settings {
  std::string input = "-";
  std::string output = "-";
  std::string split;
  int n = 0;
  std::vector<double> epsilons;
  std::optional<std::uint64_t> seed;
  double fd_step = 1e-4;
  int segments = 8;
  int restarts = 4;
  int samples = 0;
  bool slow = false;
  std::string convention = "standard-pauli";
  std::string format;
};

std::uint64_t resolve_seed(const Settings& s) {
  if (s.seed) return *s.seed;
  const char* env = std::getenv("CARTAN_SEED");
  if (env == nullptr || *env == '\0') return 1;
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(env, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != std::string(env).size()) throw ParseError(std::string("CARTAN_SEED is not an unsigned integer: ") + env);
  return v;
}

std::string read_text(const std::string& path, std::istream& in) {
  std::ostringstream buf;
  if (path == "-") {
    buf << in.rdbuf();
  } else {
    std::ifstream f(path);
    if (!f) throw PreconditionError("cannot open input file '" + path + "'");
    buf << f.rdbuf();
  }
  return buf.str();
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path == "-") {
    out << text;
    out.flush();
    return;
  }
  std::ofstream f(path);
  if (!f) throw PreconditionError("cannot open output file '" + path + "'");
  f << text;
}

int qubits_of_dim(Eigen::Index dim) {
  for (int n = 1; n <= kMaxQubits; ++n)
    if ((Eigen::Index{1} << n) == dim) return n;
  throw PreconditionError("matrix dimension " + std::to_string(dim) + " is not 2^n with 1 <= n <= 4");
}

CartanSplit resolve_split(const Settings& s, int qubits_hint, std::istream& in) {
  std::string name = s.split;
  if (name.empty()) {
    const int n = s.n > 0 ? s.n : qubits_hint;
    if (n <= 0) throw PreconditionError("no split given (use --split)");
    name = n == 1 ? "single_x" : (n == 2 ? "two_local" : "ai");
  }
  if (const auto kind = parse_split_kind(name)) {
    int n = s.n > 0 ? s.n : qubits_hint;
    if (*kind == SplitKind::single_x || *kind == SplitKind::two_local) {
      const int fixed = *kind == SplitKind::single_x ? 1 : 2;
      if (n > 0 && n != fixed)
        throw PreconditionError("split " + name + " acts on " + std::to_string(fixed) + " qubit(s), got " +
                                std::to_string(n));
      n = fixed;
    }
    if (n <= 0) throw PreconditionError("split ai needs --n or an input matrix");
    return builtin_split(n, *kind);
  }
  return split_from_json(parse_json(read_text(name, in)));
}

Matrix read_matrix(const Settings& s, std::istream& in) { return matrix_from_json(parse_json(read_text(s.input, in))); }

void require_dim(const Matrix& u, const CartanSplit& split) {
  if (u.rows() != split.dim())
    throw PreconditionError("dimension mismatch: matrix is " + std::to_string(u.rows()) + "x" +
                            std::to_string(u.cols()) + ", split " + split.name + " needs " + std::to_string(split.dim()));
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

void table_row(std::string& out, const std::string& check, const std::string& value, bool pass) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-34s %-22s %s\n", check.c_str(), value.c_str(), pass ? "pass" : "FAIL");
  out += buf;
}

int cmd_decompose(const Settings& s, std::istream& in, std::ostream& out) {
  const Matrix u = read_matrix(s, in);
  const CartanSplit split = resolve_split(s, qubits_of_dim(u.rows()), in);
  require_dim(u, split);
  const SpecialProjection sp = project_to_special(u);
  const KakFactors f = kak_decompose(sp.special, split);
  Json j;
  j["factors"] = factors_to_json(f);
  j["reconstruction_residual"] = frobenius_distance(reconstruct(f), sp.special, false);
  j["removed_phase"] = sp.removed_phase;
  write_text(s.output, dump_json(j), out);
  return kOk;
}

int cmd_cost(const Settings& s, std::istream& in, std::ostream& out) {
  const Matrix u = read_matrix(s, in);
  const CartanSplit split = resolve_split(s, qubits_of_dim(u.rows()), in);
  require_dim(u, split);
  const CostReport r = optimal_cost(u, split);
  Json j = cost_report_to_json(r);
  if (split.qubits == 1 && split.z.size() == 1) {
    // e^{iZ} = e^{-i z P} (standard Paulis) = e^{-i z' P/2} (halved, z' = 2z).
    const double z_std = -r.factors.z[split.z.front()];
    const bool halved = s.convention == "halved-z";
    j["middle_angle"] = {{"convention", s.convention}, {"z", halved ? 2.0 * z_std : z_std}};
    if (halved) j["middle_angle"]["closed_form_cost"] = single_qubit_cost(0.0, 2.0 * z_std, 0.0);
  }
  write_text(s.output, dump_json(j), out);
  return kOk;
}

int cmd_verify_split(const Settings& s, std::istream& in, std::ostream& out) {
  const CartanSplit split = resolve_split(s, 0, in);
  const SplitReport r = verify_cartan_split(split, 1e-12);
  const bool maximal = verify_maximal_abelian(split);
  const AdaptedBasisReport ab = adapted_basis_properties(split, 8, resolve_seed(s));

  std::string text = "split " + split.name + " (n=" + std::to_string(split.qubits) + ", |l|=" +
                     std::to_string(split.l.size()) + ", |p|=" + std::to_string(split.p.size()) +
                     ", |z|=" + std::to_string(split.z.size()) + ")\n";
  table_row(text, "[l,l] in l", "", r.ll_ok);
  table_row(text, "[p,l] in p", "", r.pl_ok);
  table_row(text, "[p,p] in l", "", r.pp_ok);
  table_row(text, "l, p orthogonal and complete", "", r.orthogonal_ok);
  table_row(text, "z maximal abelian in p", "", maximal);
  table_row(text, "adapted basis: e^{il} real", fmt(ab.max_imag_defect), ab.max_imag_defect <= 1e-8);
  table_row(text, "adapted basis: e^{il} orthogonal", fmt(ab.max_orthogonal_defect), ab.max_orthogonal_defect <= 1e-8);
  table_row(text, "adapted basis: z diagonal", fmt(ab.max_offdiagonal), ab.max_offdiagonal <= 1e-10);
  text += std::string("info: [p,l] spans p: ") + (r.pl_spans ? "yes" : "no") + "\n";
  for (const auto& v : r.violations)
    text += "violation " + v.relation + " " + v.first.str() + " " + v.second.str() + " -> " + v.result.str() + "\n";
  for (const auto& note : r.notes) text += "note: " + note + "\n";
  const bool ok = r.valid() && maximal && ab.ok;
  text += ok ? "result: pass\n" : "result: FAIL\n";
  write_text(s.output, text, out);
  return ok ? kOk : kVerificationFailed;
}

int cmd_verify_metric(const Settings& s, std::istream& in, std::ostream& out) {
  const CartanSplit split = resolve_split(s, 0, in);
  const double eps = s.epsilons.empty() ? 0.01 : s.epsilons.front();
  const PenaltyMetric metric(split, eps);
  const int samples = s.samples > 0 ? s.samples : (split.qubits == 1 ? 20 : 10);
  const std::uint64_t seed = resolve_seed(s);

  GramStructureReport worst;
  worst.block_diagonal_ok = worst.z_decoupled_ok = worst.central_ok = worst.g11_ok = worst.g33_ok = true;
  worst.g13_cross_term_ok = true;
  double richardson = 0, g33_min = std::numeric_limits<double>::infinity();
  Json reports = Json::array();
  for (int i = 0; i < samples; ++i) {
    const BasePoint base = random_base_point(split, seed + static_cast<std::uint64_t>(i));
    const CoordinateGram g = pullback_gram(base, metric, s.fd_step);
    const GramStructureReport r = verify_gram_structure(g, metric);
    reports.push_back(gram_to_json(g, r));
    worst.g12_max = std::max(worst.g12_max, r.g12_max);
    worst.g13_max = std::max(worst.g13_max, r.g13_max);
    worst.g23_max = std::max(worst.g23_max, r.g23_max);
    worst.central_deviation = std::max(worst.central_deviation, r.central_deviation);
    worst.g11_relative_deviation = std::max(worst.g11_relative_deviation, r.g11_relative_deviation);
    worst.g13_cross_term_deviation = std::max(worst.g13_cross_term_deviation, r.g13_cross_term_deviation);
    worst.block_diagonal_ok &= r.block_diagonal_ok;
    worst.z_decoupled_ok &= r.z_decoupled_ok;
    worst.central_ok &= r.central_ok;
    worst.g11_ok &= r.g11_ok;
    worst.g33_ok &= r.g33_ok;
    worst.g13_cross_term_ok &= r.g13_cross_term_ok;
    richardson = std::max(richardson, g.richardson_residual);
    g33_min = std::min(g33_min, r.g33_min_eigenvalue);
  }

  std::string text = "metric " + split.name + " eps=" + fmt(eps) + " fd_step=" + fmt(s.fd_step) +
                     " points=" + std::to_string(samples) + "\n";
  table_row(text, "G12, G23 vanish", fmt(std::max(worst.g12_max, worst.g23_max)), worst.z_decoupled_ok);
  table_row(text, "G13 vanishes", fmt(worst.g13_max), worst.g13_max <= 1e-4);
  table_row(text, "G22 = I", fmt(worst.central_deviation), worst.central_ok);
  table_row(text, "G11 = eps BCH^T BCH (relative)", fmt(worst.g11_relative_deviation), worst.g11_ok);
  table_row(text, "G33 PSD (Z=0 form when Z=0)", fmt(g33_min), worst.g33_ok);
  table_row(text, "G13 = analytic cross term", fmt(worst.g13_cross_term_deviation), worst.g13_cross_term_ok);
  text += "info: richardson residual " + fmt(richardson) + "\n";
  const bool ok = worst.block_diagonal_ok && worst.central_ok && worst.g11_ok && worst.g33_ok;
  text += ok ? "result: pass\n" : "result: FAIL\n";
  out << text;
  if (s.output != "-") write_text(s.output, dump_json(reports), out);
  return ok ? kOk : kVerificationFailed;
}

int cmd_sweep(const Settings& s, std::istream& in, std::ostream& out, std::ostream& err) {
  const Matrix u = read_matrix(s, in);
  const CartanSplit split = resolve_split(s, qubits_of_dim(u.rows()), in);
  require_dim(u, split);
  if (split.qubits >= 2 && !s.slow)
    throw PreconditionError("sweeps on SU(" + std::to_string(split.dim()) +
                            ") take minutes; pass --slow to run them (tolerance 20%)");
  const SpecialProjection sp = project_to_special(u);
  std::vector<double> eps = s.epsilons.empty() ? std::vector<double>{1e-1, 1e-2, 1e-3} : s.epsilons;
  SweepOptions opt;
  opt.segments = s.segments;
  opt.restarts = s.restarts;
  opt.seed = resolve_seed(s);
  const SweepResult r = epsilon_sweep(sp.special, split, eps, opt);

  std::string format = s.format;
  if (format.empty()) format = s.output.size() > 4 && s.output.ends_with(".csv") ? "csv" : "json";
  write_text(s.output, format == "csv" ? sweep_to_csv(r) : dump_json(sweep_to_json(r)), out);
  for (std::size_t i = 0; i < r.converged.size(); ++i)
    if (!r.converged[i]) {
      err << "cartan: optimizer did not reach the endpoint tolerance at eps=" << r.epsilon_values[i]
          << " (best residual " << r.endpoint_residuals[i] << ")\n";
      return kNonConvergence;
    }
  return kOk;
}

int cmd_random(const Settings& s, std::ostream& out) {
  const int n = s.n > 0 ? s.n : 1;
  if (n > kMaxQubits) throw PreconditionError("--n must be in 1..4");
  write_text(s.output, dump_json(matrix_to_json(haar_random_special_unitary(1 << n, resolve_seed(s)))), out);
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Settings s;
  CLI::App app{"Optimal synthesis cost of Cartan control problems", "cartan"};
  app.require_subcommand(1);

  auto add_io = [&](CLI::App* c, bool input) {
    if (input) c->add_option("--input,-i", s.input, "matrix JSON file, - for stdin")->capture_default_str();
    c->add_option("--output,-o", s.output, "output file, - for stdout")->capture_default_str();
  };
  auto add_split = [&](CLI::App* c) {
    c->add_option("--split", s.split, "single_x | two_local | ai | path to a split JSON file");
    c->add_option("--n", s.n, "qubit count (ai split, random)")->check(CLI::Range(1, kMaxQubits));
  };
  auto add_seed = [&](CLI::App* c) {
    c->add_option("--seed", s.seed, "RNG seed (falls back to CARTAN_SEED, then 1)");
  };

  auto* decompose = app.add_subcommand("decompose", "KAK factors of a unitary");
  add_io(decompose, true);
  add_split(decompose);
  auto* cost = app.add_subcommand("cost", "optimal cost D(I, U)");
  add_io(cost, true);
  add_split(cost);
  cost->add_option("--convention", s.convention, "single-qubit angle convention")
      ->check(CLI::IsMember({"standard-pauli", "halved-z"}))
      ->capture_default_str();
  auto* vsplit = app.add_subcommand("verify-split", "check the Cartan commutation relations of a split");
  add_io(vsplit, false);
  add_split(vsplit);
  add_seed(vsplit);
  auto* vmetric = app.add_subcommand("verify-metric", "finite-difference Gram block structure");
  add_io(vmetric, false);
  add_split(vmetric);
  add_seed(vmetric);
  vmetric->add_option("--epsilon", s.epsilons, "penalty weight in (0, 1]")->expected(1);
  vmetric->add_option("--fd-step", s.fd_step, "central difference step")->capture_default_str();
  vmetric->add_option("--samples", s.samples, "random base points")->check(CLI::PositiveNumber);
  auto* sweep = app.add_subcommand("sweep", "numeric optimum versus epsilon");
  add_io(sweep, true);
  add_split(sweep);
  add_seed(sweep);
  sweep->add_option("--epsilon", s.epsilons, "descending epsilon values (comma separated)")->delimiter(',');
  sweep->add_option("--segments", s.segments, "control segments")->check(CLI::Range(3, 64))->capture_default_str();
  sweep->add_option("--restarts", s.restarts, "optimizer restarts")->check(CLI::Range(1, 256))->capture_default_str();
  sweep->add_flag("--slow", s.slow, "allow SU(4) and larger sweeps");
  sweep->add_option("--format", s.format, "json | csv (default from the output extension)")
      ->check(CLI::IsMember({"json", "csv"}));
  auto* random = app.add_subcommand("random", "Haar-random special unitary as matrix JSON");
  add_io(random, false);
  random->add_option("--n", s.n, "qubit count")->check(CLI::Range(1, kMaxQubits));
  add_seed(random);

  std::vector<std::string> argv_store{"cartan"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "cartan: " << e.what() << "\n";
    return kParseError;
  }

  try {
    for (const double e : s.epsilons)
      if (!(e > 0.0 && e <= 1.0)) throw PreconditionError("epsilon must lie in (0, 1]");
    if (decompose->parsed()) return cmd_decompose(s, in, out);
    if (cost->parsed()) return cmd_cost(s, in, out);
    if (vsplit->parsed()) return cmd_verify_split(s, in, out);
    if (vmetric->parsed()) return cmd_verify_metric(s, in, out);
    if (sweep->parsed()) return cmd_sweep(s, in, out, err);
    if (random->parsed()) return cmd_random(s, out);
  } catch (const ParseError& e) {
    err << "cartan: parse error: " << e.what() << "\n";
    return kParseError;
  } catch (const PreconditionError& e) {
    err << "cartan: precondition failed: " << e.what() << "\n";
    return kPreconditionError;
  } catch (const ConvergenceError& e) {
    err << "cartan: no convergence: " << e.what() << " (best residual " << e.best_residual() << ")\n";
    return kNonConvergence;
  } catch (const Error& e) {
    err << "cartan: numerical failure: " << e.what() << "\n";
    return kNumericalError;
  } catch (const std::exception& e) {
    err << "cartan: numerical failure: " << e.what() << "\n";
    return kNumericalError;
  }
  return kParseError;
}

}  // namespace cartan::cli
