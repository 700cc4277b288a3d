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

#include "cartan/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "cartan/errors.hpp"

namespace cartan {
namespace {

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void emit(const Json& j, int depth, std::string& out) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(2 * depth), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(key).dump() + ": ";
        emit(value, depth + 1, out);
      }
      out += "\n" + close + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      const bool flat = std::none_of(j.begin(), j.end(), [](const Json& e) { return e.is_structured(); });
      out += flat ? "[" : "[\n";
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += flat ? ", " : ",\n";
        first = false;
        if (!flat) out += pad;
        emit(e, depth + 1, out);
      }
      out += flat ? "]" : "\n" + close + "]";
      return;
    }
    case Json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

const Json& require(const Json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string(what) + ": missing key \"" + key + "\"");
  return j.at(key);
}

RealMatrix square_from_json(const Json& rows, int dim, const char* what) {
  if (!rows.is_array() || static_cast<int>(rows.size()) != dim)
    throw ParseError(std::string("matrix: \"") + what + "\" must have dim rows");
  RealMatrix m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const Json& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != dim)
      throw ParseError(std::string("matrix: \"") + what + "\" rows must have dim entries");
    for (int k = 0; k < dim; ++k) {
      const Json& v = row[static_cast<std::size_t>(k)];
      if (!v.is_number()) throw ParseError(std::string("matrix: non-numeric entry in \"") + what + "\"");
      m(i, k) = v.get<double>();
    }
  }
  return m;
}

std::vector<PauliString> strings_from_json(const Json& j, const char* key) {
  const Json& list = require(j, key, "split");
  if (!list.is_array()) throw ParseError(std::string("split: \"") + key + "\" must be a list of letter strings");
  std::vector<PauliString> out;
  for (const auto& e : list) {
    if (!e.is_string()) throw ParseError(std::string("split: \"") + key + "\" must be a list of letter strings");
    out.push_back(PauliString::parse(e.get<std::string>()));
  }
  return out;
}

Json strings_to_json(const std::vector<PauliString>& v) {
  Json out = Json::array();
  for (const auto& s : v) out.push_back(s.str());
  return out;
}

Json vector_to_json(const RealVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

}  // namespace

std::string dump_json(const Json& j) {
  std::string out;
  emit(j, 0, out);
  out += "\n";
  return out;
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

Json matrix_to_json(const Matrix& m) {
  Json re = Json::array(), im = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json r = Json::array(), c = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      r.push_back(m(i, k).real());
      c.push_back(m(i, k).imag());
    }
    re.push_back(std::move(r));
    im.push_back(std::move(c));
  }
  Json out;
  out["dim"] = m.rows();
  out["re"] = std::move(re);
  out["im"] = std::move(im);
  return out;
}

Matrix matrix_from_json(const Json& j) {
  const Json& dim_j = require(j, "dim", "matrix");
  if (!dim_j.is_number_integer() || dim_j.get<long long>() < 1 || dim_j.get<long long>() > 64)
    throw ParseError("matrix: \"dim\" must be a positive integer");
  const int dim = dim_j.get<int>();
  const RealMatrix re = square_from_json(require(j, "re", "matrix"), dim, "re");
  const RealMatrix im = j.contains("im") ? square_from_json(j.at("im"), dim, "im") : RealMatrix::Zero(dim, dim);
  Matrix m(dim, dim);
  m.real() = re;
  m.imag() = im;
  return m;
}

Json real_matrix_to_json(const RealMatrix& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json r = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) r.push_back(m(i, k));
    out.push_back(std::move(r));
  }
  return out;
}

Json hamiltonian_to_json(const HamiltonianVector& h) {
  Json out = Json::object();
  for (const auto& s : all_strings(h.qubits())) {
    if (s.is_identity()) continue;
    const double c = h[s];
    if (c != 0.0) out[s.str()] = c;
  }
  return out;
}

HamiltonianVector hamiltonian_from_json(const Json& j, int qubits) {
  if (!j.is_object()) throw ParseError("hamiltonian: expected an object of Pauli coefficients");
  HamiltonianVector h(qubits);
  for (const auto& [key, value] : j.items()) {
    const PauliString s = PauliString::parse(key);
    if (s.qubits() != qubits) throw ParseError("hamiltonian: string '" + key + "' has the wrong length");
    if (s.is_identity()) throw ParseError("hamiltonian: the identity carries no coefficient");
    if (!value.is_number()) throw ParseError("hamiltonian: coefficient of '" + key + "' is not a number");
    h[s] = value.get<double>();
  }
  return h;
}

CartanSplit split_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("split: expected a JSON object");
  auto l = strings_from_json(j, "l");
  auto p = strings_from_json(j, "p");
  auto z = strings_from_json(j, "z");
  const std::vector<PauliString>* any = !l.empty() ? &l : (!p.empty() ? &p : &z);
  if (any->empty()) throw ParseError("split: all string lists are empty");
  const int qubits = any->front().qubits();
  std::optional<Matrix> q;
  if (j.contains("Q")) q = matrix_from_json(j.at("Q"));
  std::string name = "custom";
  if (j.contains("name")) {
    if (!j.at("name").is_string()) throw ParseError("split: \"name\" must be a string");
    name = j.at("name").get<std::string>();
  }
  return make_split(std::move(name), qubits, std::move(l), std::move(p), std::move(z), std::move(q));
}

Json split_to_json(const CartanSplit& split) {
  Json out;
  out["name"] = split.name;
  out["l"] = strings_to_json(split.l);
  out["p"] = strings_to_json(split.p);
  out["z"] = strings_to_json(split.z);
  out["Q"] = matrix_to_json(split.adapted_basis);
  return out;
}

Json factors_to_json(const KakFactors& f) {
  Json out;
  out["split"] = f.split_name;
  out["L"] = hamiltonian_to_json(f.l);
  out["Z"] = hamiltonian_to_json(f.z);
  out["M"] = hamiltonian_to_json(f.m);
  out["phases"] = vector_to_json(f.phases);
  out["A"] = matrix_to_json(f.a);
  out["D"] = matrix_to_json(f.d);
  out["B"] = matrix_to_json(f.b);
  return out;
}

Json cost_report_to_json(const CostReport& r) {
  Json out;
  out["cost"] = r.cost;
  out["eigenphases"] = vector_to_json(r.eigenphases.phases);
  out["lattice_point"] = r.lattice_point;
  out["convention"] = "trace-norm-pauli";
  out["shifted_phases"] = vector_to_json(r.shifted_phases);
  out["removed_phase"] = r.removed_phase;
  return out;
}

Json gram_to_json(const CoordinateGram& g, const GramStructureReport& r) {
  Json blocks;
  for (int i = 0; i < 3; ++i)
    for (int k = i; k < 3; ++k)
      blocks["G" + std::to_string(i + 1) + std::to_string(k + 1)] = real_matrix_to_json(g.block(i, k));
  Json report;
  report["g12_max"] = r.g12_max;
  report["g13_max"] = r.g13_max;
  report["g23_max"] = r.g23_max;
  report["block_diagonal_ok"] = r.block_diagonal_ok;
  report["z_decoupled_ok"] = r.z_decoupled_ok;
  report["central_deviation"] = r.central_deviation;
  report["central_ok"] = r.central_ok;
  report["g11_relative_deviation"] = r.g11_relative_deviation;
  report["g11_ok"] = r.g11_ok;
  report["z_is_zero"] = r.z_is_zero;
  report["g33_relative_deviation"] = r.g33_relative_deviation;
  report["g33_min_eigenvalue"] = r.g33_min_eigenvalue;
  report["g33_max_eigenvalue"] = r.g33_max_eigenvalue;
  report["g33_ok"] = r.g33_ok;
  report["g13_cross_term_deviation"] = r.g13_cross_term_deviation;
  report["g13_cross_term_ok"] = r.g13_cross_term_ok;

  Json out;
  out["fd_step"] = g.fd_step;
  out["richardson_residual"] = g.richardson_residual;
  out["l_dim"] = g.l_dim;
  out["z_dim"] = g.z_dim;
  out["base"] = {{"L", hamiltonian_to_json(g.base.l)}, {"Z", hamiltonian_to_json(g.base.z)},
                 {"M", hamiltonian_to_json(g.base.m)}};
  out["blocks"] = std::move(blocks);
  out["checks"] = std::move(report);
  return out;
}

Json sweep_to_json(const SweepResult& s) {
  const auto rel = s.relative_errors();
  Json rows = Json::array();
  for (std::size_t i = 0; i < s.epsilon_values.size(); ++i) {
    Json row;
    row["epsilon"] = s.epsilon_values[i];
    row["numeric_cost"] = s.numeric_costs[i];
    row["endpoint_residual"] = s.endpoint_residuals[i];
    row["upper_bound"] = s.upper_bounds[i];
    row["relative_error"] = rel[i];
    row["converged"] = static_cast<bool>(s.converged[i]);
    row["sandwich_ok"] = static_cast<bool>(s.sandwich_ok[i]);
    rows.push_back(std::move(row));
  }
  Json out;
  out["analytic_cost"] = s.analytic_cost;
  out["analytic_mod_phase"] = s.analytic_mod_phase;
  out["convention"] = "trace-norm-pauli";
  out["rows"] = std::move(rows);
  out["monotone"] = s.monotone();
  return out;
}

std::string sweep_to_csv(const SweepResult& s) {
  const auto rel = s.relative_errors();
  std::string out = "epsilon,numeric_cost,endpoint_residual,upper_bound,relative_error,analytic_cost\n";
  for (std::size_t i = 0; i < s.epsilon_values.size(); ++i) {
    out += format_double(s.epsilon_values[i]) + "," + format_double(s.numeric_costs[i]) + "," +
           format_double(s.endpoint_residuals[i]) + "," + format_double(s.upper_bounds[i]) + "," +
           format_double(rel[i]) + "," + format_double(s.analytic_cost) + "\n";
  }
  return out;
}

}  // namespace cartan
