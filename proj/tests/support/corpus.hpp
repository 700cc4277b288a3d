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

#include <array>
#include <cstdint>
#include <random>

#include "cartan/pauli.hpp"

namespace cartan::testing {

// Local unitary e^{iK}, K a random element of su(2) + su(2).
inline Matrix random_local(std::uint64_t seed) {
  const Matrix a = haar_random_special_unitary(2, 2 * seed + 1);
  const Matrix b = haar_random_special_unitary(2, 2 * seed + 2);
  Matrix out(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block(2 * i, 2 * j, 2, 2) = a(i, j) * b;
  return out;
}

// exp(i(c1 XX + c2 YY + c3 ZZ)).
inline Matrix canonical_gate(double c1, double c2, double c3) {
  const Matrix h = c1 * PauliString::parse("XX").matrix() + c2 * PauliString::parse("YY").matrix() +
                   c3 * PauliString::parse("ZZ").matrix();
  return expi(h);
}

// Two-qubit gates whose magic-basis spectrum is degenerate: the
// interaction coefficients are drawn from a small set with ties, then
// dressed by random local gates on both sides.
inline Matrix degenerate_su4(std::uint64_t seed) {
  static constexpr std::array<std::array<double, 3>, 8> kCoefficients{{
      {0.0, 0.0, 0.0},
      {kPi / 4, 0.0, 0.0},
      {kPi / 4, kPi / 4, 0.0},
      {kPi / 4, kPi / 4, kPi / 4},
      {0.3, 0.3, 0.0},
      {0.3, 0.3, 0.3},
      {0.5, 0.2, 0.2},
      {kPi / 2, 0.0, 0.0},
  }};
  const auto& c = kCoefficients[seed % kCoefficients.size()];
  return random_local(seed * 3 + 100) * canonical_gate(c[0], c[1], c[2]) * random_local(seed * 3 + 101);
}

// O1 diag(e^{i theta}) O2 with repeated phases; in SU(2^n) for the ai split.
inline Matrix degenerate_ai(int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  RealVector theta(dim);
  const double a = angle(rng), b = angle(rng);
  for (int i = 0; i < dim; ++i) theta(i) = i < dim / 2 ? a : b;
  theta.array() -= theta.mean();
  ComplexVector d(dim);
  for (int i = 0; i < dim; ++i) d(i) = std::polar(1.0, theta(i));
  const Matrix o1 = haar_random_special_orthogonal(dim, seed + 7).cast<cplx>();
  const Matrix o2 = haar_random_special_orthogonal(dim, seed + 8).cast<cplx>();
  return o1 * d.asDiagonal() * o2;
}

}  // namespace cartan::testing
