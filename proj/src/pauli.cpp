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

#include "cartan/pauli.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "cartan/errors.hpp"

namespace cartan {
namespace {

// Single-letter products a*b = i^power * letter.
struct LetterProduct {
  int power;
  int letter;
};
constexpr LetterProduct kLetterTable[4][4] = {
    {{0, 0}, {0, 1}, {0, 2}, {0, 3}},
    {{0, 1}, {0, 0}, {1, 3}, {3, 2}},
    {{0, 2}, {3, 3}, {0, 0}, {1, 1}},
    {{0, 3}, {1, 2}, {3, 1}, {0, 0}},
};

void check_qubits(int qubits) {
  if (qubits < 1 || qubits > kMaxQubits)
    throw PreconditionError("qubit count must be in 1.." + std::to_string(kMaxQubits));
}

// Row r of a Pauli string has a single nonzero, at column r ^ flip_mask.
struct RowEntry {
  int column;
  cplx value;
};

RowEntry pauli_row(const PauliString& s, int row) {
  const int n = s.qubits();
  int column = row;
  int i_power = 0;
  bool negate = false;
  for (int q = 0; q < n; ++q) {
    const int bit = (row >> (n - 1 - q)) & 1;
    switch (s.letter_code(q)) {
      case 1:
        column ^= 1 << (n - 1 - q);
        break;
      case 2:
        column ^= 1 << (n - 1 - q);
        i_power += bit ? 1 : 3;  // <0|Y|1> = -i, <1|Y|0> = i
        break;
      case 3:
        negate ^= (bit == 1);
        break;
      default:
        break;
    }
  }
  static const cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  cplx v = kIPow[i_power & 3];
  if (negate) v = -v;
  return {column, v};
}

template <typename Pred>
std::vector<PauliString> filter_strings(int qubits, Pred pred) {
  std::vector<PauliString> out;
  for (const auto& s : all_strings(qubits))
    if (pred(s)) out.push_back(s);
  return out;
}

// Per-index membership table: 0 none, 1 l, 2 p.
std::vector<int> membership(const CartanSplit& split) {
  const std::size_t total = (std::size_t{1} << (2 * split.qubits)) - 1;
  std::vector<int> table(total, 0);
  for (const auto& s : split.l) table[s.index()] |= 1;
  for (const auto& s : split.p) table[s.index()] |= 2;
  return table;
}

}  // namespace

PauliString::PauliString(int qubits, std::uint32_t code) : qubits_(qubits), code_(code) {
  check_qubits(qubits);
  if (code >= (1u << (2 * qubits))) throw PreconditionError("PauliString: code out of range");
}

PauliString PauliString::parse(std::string_view letters) {
  if (letters.empty() || letters.size() > static_cast<std::size_t>(kMaxQubits))
    throw ParseError("Pauli string must have 1.." + std::to_string(kMaxQubits) + " letters: '" +
                     std::string(letters) + "'");
  std::uint32_t code = 0;
  for (char c : letters) {
    int v;
    switch (c) {
      case 'I': v = 0; break;
      case 'X': v = 1; break;
      case 'Y': v = 2; break;
      case 'Z': v = 3; break;
      default:
        throw ParseError("invalid Pauli letter '" + std::string(1, c) + "'");
    }
    code = code * 4 + static_cast<std::uint32_t>(v);
  }
  return PauliString(static_cast<int>(letters.size()), code);
}

std::size_t PauliString::index() const {
  if (code_ == 0) throw PreconditionError("the identity string has no coefficient slot");
  return code_ - 1;
}

int PauliString::weight() const noexcept {
  int w = 0;
  for (int q = 0; q < qubits_; ++q) w += letter_code(q) != 0;
  return w;
}

int PauliString::count(char letter) const noexcept {
  int c = 0;
  for (int q = 0; q < qubits_; ++q) c += this->letter(q) == letter;
  return c;
}

bool PauliString::commutes_with(const PauliString& other) const {
  return multiply_strings(*this, other).i_power % 2 == 0;
}

std::string PauliString::str() const {
  std::string out;
  for (int q = 0; q < qubits_; ++q) out.push_back(letter(q));
  return out;
}

Matrix PauliString::matrix() const {
  const int dim = 1 << qubits_;
  Matrix m = Matrix::Zero(dim, dim);
  for (int r = 0; r < dim; ++r) {
    const auto e = pauli_row(*this, r);
    m(r, e.column) = e.value;
  }
  return m;
}

cplx PauliProduct::phase() const {
  static const cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return kIPow[i_power & 3];
}

PauliProduct multiply_strings(const PauliString& p, const PauliString& q) {
  if (p.qubits() != q.qubits()) throw PreconditionError("multiply_strings: qubit counts differ");
  int power = 0;
  std::uint32_t code = 0;
  for (int k = 0; k < p.qubits(); ++k) {
    const auto lp = kLetterTable[p.letter_code(k)][q.letter_code(k)];
    power += lp.power;
    code = code * 4 + static_cast<std::uint32_t>(lp.letter);
  }
  return {power & 3, PauliString(p.qubits(), code)};
}

std::vector<PauliString> all_strings(int qubits) {
  check_qubits(qubits);
  std::vector<PauliString> out;
  const std::uint32_t total = 1u << (2 * qubits);
  out.reserve(total - 1);
  for (std::uint32_t c = 1; c < total; ++c) out.emplace_back(qubits, c);
  return out;
}

HamiltonianVector::HamiltonianVector(int qubits)
    : qubits_(qubits), coefficients_(RealVector::Zero((Eigen::Index{1} << (2 * qubits)) - 1)) {
  check_qubits(qubits);
}

HamiltonianVector::HamiltonianVector(int qubits, RealVector coefficients)
    : qubits_(qubits), coefficients_(std::move(coefficients)) {
  check_qubits(qubits);
  if (coefficients_.size() != (Eigen::Index{1} << (2 * qubits)) - 1)
    throw PreconditionError("HamiltonianVector: coefficient count must be 4^n - 1");
}

HamiltonianVector HamiltonianVector::from_dense(const Matrix& h) {
  const auto dim = h.rows();
  int qubits = 0;
  while ((Eigen::Index{1} << qubits) < dim) ++qubits;
  if (h.rows() != h.cols() || (Eigen::Index{1} << qubits) != dim)
    throw PreconditionError("from_dense: matrix dimension must be a power of two");
  HamiltonianVector out(qubits);
  for (const auto& s : all_strings(qubits)) {
    cplx tr = 0;
    for (int r = 0; r < dim; ++r) {
      const auto e = pauli_row(s, r);
      tr += e.value * h(e.column, r);
    }
    out[s] = tr.real() / static_cast<double>(dim);
  }
  return out;
}

HamiltonianVector HamiltonianVector::single(const PauliString& p, double value) {
  HamiltonianVector out(p.qubits());
  out[p] = value;
  return out;
}

Matrix HamiltonianVector::dense() const {
  const int d = dim();
  Matrix m = Matrix::Zero(d, d);
  for (const auto& s : all_strings(qubits_)) {
    const double c = (*this)[s];
    if (c == 0.0) continue;
    for (int r = 0; r < d; ++r) {
      const auto e = pauli_row(s, r);
      m(r, e.column) += c * e.value;
    }
  }
  return m;
}

HamiltonianVector& HamiltonianVector::operator+=(const HamiltonianVector& o) {
  if (o.qubits_ != qubits_) throw PreconditionError("HamiltonianVector: qubit counts differ");
  coefficients_ += o.coefficients_;
  return *this;
}

HamiltonianVector& HamiltonianVector::operator-=(const HamiltonianVector& o) {
  if (o.qubits_ != qubits_) throw PreconditionError("HamiltonianVector: qubit counts differ");
  coefficients_ -= o.coefficients_;
  return *this;
}

HamiltonianVector& HamiltonianVector::operator*=(double s) {
  coefficients_ *= s;
  return *this;
}

double trace_inner_product(const HamiltonianVector& a, const HamiltonianVector& b) {
  if (a.qubits() != b.qubits()) throw PreconditionError("trace_inner_product: qubit counts differ");
  return static_cast<double>(a.dim()) * a.coefficients().dot(b.coefficients());
}

double trace_norm(const HamiltonianVector& h) { return std::sqrt(trace_inner_product(h, h)); }

HamiltonianVector commutator(const HamiltonianVector& a, const HamiltonianVector& b) {
  if (a.qubits() != b.qubits()) throw PreconditionError("commutator: qubit counts differ");
  const auto strings = all_strings(a.qubits());
  HamiltonianVector out(a.qubits());
  for (const auto& p : strings) {
    const double ap = a[p];
    if (ap == 0.0) continue;
    for (const auto& q : strings) {
      const double bq = b[q];
      if (bq == 0.0) continue;
      const auto prod = multiply_strings(p, q);
      if (prod.i_power % 2 == 0) continue;
      // [P, Q] = 2 i^k R with k odd, so -i [P, Q] = 2 i^(k-1) R = +-2 R.
      const double sign = prod.i_power == 1 ? 2.0 : -2.0;
      out[prod.string] += sign * ap * bq;
    }
  }
  return out;
}

std::optional<SplitKind> parse_split_kind(std::string_view name) {
  if (name == "single_x") return SplitKind::single_x;
  if (name == "two_local") return SplitKind::two_local;
  if (name == "ai") return SplitKind::ai;
  return std::nullopt;
}

std::string to_string(SplitKind kind) {
  switch (kind) {
    case SplitKind::single_x: return "single_x";
    case SplitKind::two_local: return "two_local";
    case SplitKind::ai: return "ai";
  }
  return "?";
}

bool CartanSplit::in_l(const PauliString& s) const { return std::find(l.begin(), l.end(), s) != l.end(); }
bool CartanSplit::in_p(const PauliString& s) const { return std::find(p.begin(), p.end(), s) != p.end(); }
bool CartanSplit::in_z(const PauliString& s) const { return std::find(z.begin(), z.end(), s) != z.end(); }

CartanSplit make_split(std::string name, int qubits, std::vector<PauliString> l, std::vector<PauliString> p,
                       std::vector<PauliString> z, std::optional<Matrix> adapted_basis) {
  check_qubits(qubits);
  for (const auto* list : {&l, &p, &z})
    for (const auto& s : *list) {
      if (s.qubits() != qubits) throw PreconditionError("split: string " + s.str() + " has the wrong length");
      if (s.is_identity()) throw PreconditionError("split: the identity string is not traceless");
    }
  CartanSplit out;
  out.name = std::move(name);
  out.qubits = qubits;
  out.l = std::move(l);
  out.p = std::move(p);
  out.z = std::move(z);
  const int dim = 1 << qubits;
  out.adapted_basis = adapted_basis.value_or(Matrix::Identity(dim, dim));
  if (out.adapted_basis.rows() != dim || !is_unitary(out.adapted_basis, 1e-10))
    throw PreconditionError("split: adapted basis must be a unitary of dimension 2^n");
  return out;
}

Matrix magic_basis() {
  const double h = 1.0 / std::sqrt(2.0);
  const cplx i(0, h);
  Matrix q(4, 4);
  // clang-format off
  q << h,  i,  0,  0,
       0,  0,  i,  h,
       0,  0,  i, -h,
       h, -i,  0,  0;
  // clang-format on
  return q;
}

CartanSplit builtin_split(int qubits, SplitKind kind) {
  switch (kind) {
    case SplitKind::single_x: {
      if (qubits != 1) throw PreconditionError("single_x split requires n = 1");
      Matrix q = Matrix::Zero(2, 2);
      q(0, 0) = std::polar(1.0, -kPi / 4);
      q(1, 1) = std::polar(1.0, kPi / 4);
      return make_split("single_x", 1, {PauliString::parse("X")}, {PauliString::parse("Y"), PauliString::parse("Z")},
                        {PauliString::parse("Z")}, q);
    }
    case SplitKind::two_local: {
      if (qubits != 2) throw PreconditionError("two_local split requires n = 2");
      auto l = filter_strings(2, [](const PauliString& s) { return s.weight() == 1; });
      auto p = filter_strings(2, [](const PauliString& s) { return s.weight() == 2; });
      std::vector<PauliString> z = {PauliString::parse("XX"), PauliString::parse("YY"), PauliString::parse("ZZ")};
      return make_split("two_local", 2, std::move(l), std::move(p), std::move(z), magic_basis());
    }
    case SplitKind::ai: {
      if (qubits < 1 || qubits > kMaxQubits) throw PreconditionError("ai split requires 1 <= n <= 4");
      // Odd Y count <=> purely imaginary matrix, so exp(i l) is SO(2^n).
      auto l = filter_strings(qubits, [](const PauliString& s) { return s.count('Y') % 2 == 1; });
      auto p = filter_strings(qubits, [](const PauliString& s) { return s.count('Y') % 2 == 0; });
      auto z = filter_strings(qubits, [](const PauliString& s) { return s.count('X') == 0 && s.count('Y') == 0; });
      return make_split("ai", qubits, std::move(l), std::move(p), std::move(z));
    }
  }
  throw PreconditionError("unknown split kind");
}

HamiltonianVector project(const HamiltonianVector& h, const CartanSplit& split, Subspace which) {
  if (h.qubits() != split.qubits) throw PreconditionError("project: qubit counts differ");
  HamiltonianVector out(h.qubits());
  for (const auto& s : which == Subspace::l ? split.l : split.p) out[s] = h[s];
  return out;
}

HamiltonianVector project_z(const HamiltonianVector& h, const CartanSplit& split) {
  if (h.qubits() != split.qubits) throw PreconditionError("project_z: qubit counts differ");
  HamiltonianVector out(h.qubits());
  for (const auto& s : split.z) out[s] = h[s];
  return out;
}

SplitReport verify_cartan_split(const CartanSplit& split, double tol) {
  SplitReport report;
  const auto member = membership(split);
  const std::size_t total = member.size();

  std::set<PauliString> seen;
  for (const auto* list : {&split.l, &split.p})
    for (const auto& s : *list)
      if (!seen.insert(s).second) {
        report.orthogonal_ok = false;
        report.notes.push_back("string " + s.str() + " listed twice");
      }
  if (seen.size() != total) {
    report.orthogonal_ok = false;
    report.notes.push_back("l and p span " + std::to_string(seen.size()) + " of " + std::to_string(total) +
                           " directions");
  }

  // A commutator of two strings is +-2 R for a single string R; leakage
  // out of the target subspace is its full coefficient mass of 2.
  auto check = [&](const std::vector<PauliString>& first, const std::vector<PauliString>& second, int target,
                   const char* relation, bool& flag) {
    std::set<PauliString> produced;
    for (const auto& a : first)
      for (const auto& b : second) {
        const auto prod = multiply_strings(a, b);
        if (prod.i_power % 2 == 0) continue;
        produced.insert(prod.string);
        const double leak = (member[prod.string.index()] & target) ? 0.0 : 2.0;
        if (leak > tol) {
          flag = false;
          report.violations.push_back({a, b, relation, prod.string});
        }
      }
    return produced;
  };
  check(split.l, split.l, 1, "[l,l]", report.ll_ok);
  const auto pl = check(split.p, split.l, 2, "[p,l]", report.pl_ok);
  check(split.p, split.p, 1, "[p,p]", report.pp_ok);

  for (const auto& s : split.p)
    if (!pl.count(s)) {
      report.pl_spans = false;
      break;
    }
  return report;
}

bool verify_maximal_abelian(const CartanSplit& split) {
  if (split.z.empty()) return false;
  for (std::size_t i = 0; i < split.z.size(); ++i) {
    if (!split.in_p(split.z[i])) return false;
    for (std::size_t j = i + 1; j < split.z.size(); ++j)
      if (!split.z[i].commutes_with(split.z[j])) return false;
  }
  // Joint commutator map c -> (-i[z_j, sum_P c_P P])_j over the p basis.
  const auto n = split.qubits;
  const Eigen::Index block = (Eigen::Index{1} << (2 * n)) - 1;
  RealMatrix map = RealMatrix::Zero(block * static_cast<Eigen::Index>(split.z.size()),
                                    static_cast<Eigen::Index>(split.p.size()));
  for (std::size_t col = 0; col < split.p.size(); ++col) {
    const auto pv = HamiltonianVector::single(split.p[col]);
    for (std::size_t j = 0; j < split.z.size(); ++j) {
      const auto c = commutator(HamiltonianVector::single(split.z[j]), pv);
      map.block(static_cast<Eigen::Index>(j) * block, static_cast<Eigen::Index>(col), block, 1) = c.coefficients();
    }
  }
  Eigen::FullPivLU<RealMatrix> lu(map);
  lu.setThreshold(1e-10);
  const auto nullity = static_cast<Eigen::Index>(split.p.size()) - lu.rank();
  return nullity == static_cast<Eigen::Index>(std::set<PauliString>(split.z.begin(), split.z.end()).size());
}

AdaptedBasisReport adapted_basis_properties(const CartanSplit& split, int samples, std::uint64_t seed) {
  AdaptedBasisReport report;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const Matrix& q = split.adapted_basis;
  const int dim = split.dim();
  for (int s = 0; s < samples; ++s) {
    HamiltonianVector k(split.qubits);
    for (const auto& str : split.l) k[str] = normal(rng);
    const Matrix rotated = q.adjoint() * expi(k.dense()) * q;
    const RealMatrix re = rotated.real();
    report.max_imag_defect = std::max(report.max_imag_defect, rotated.imag().cwiseAbs().maxCoeff());
    report.max_orthogonal_defect =
        std::max(report.max_orthogonal_defect, (re.transpose() * re - RealMatrix::Identity(dim, dim)).cwiseAbs().maxCoeff());

    HamiltonianVector zv(split.qubits);
    for (const auto& str : split.z) zv[str] = normal(rng);
    Matrix zd = q.adjoint() * zv.dense() * q;
    zd.diagonal().setZero();
    report.max_offdiagonal = std::max(report.max_offdiagonal, zd.cwiseAbs().maxCoeff());
  }
  report.ok = report.max_imag_defect <= 1e-8 && report.max_orthogonal_defect <= 1e-8 && report.max_offdiagonal <= 1e-10;
  return report;
}

}  // namespace cartan
