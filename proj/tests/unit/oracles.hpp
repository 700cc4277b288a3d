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

#include <unsupported/Eigen/MatrixFunctions>

#include "cartan/matrix.hpp"
#include "cartan/pauli.hpp"

namespace cartan::testing {

inline Matrix pauli(const char* letters) { return PauliString::parse(letters).matrix(); }

// Eigen's scaling-and-squaring Pade exponential; independent of the
// library's eigendecomposition route.
inline Matrix oracle_expi(const Matrix& h) {
  const Matrix x = cplx(0, 1) * h;
  return x.exp();
}

inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

inline Matrix random_hermitian(int dim, std::uint64_t seed, double scale = 1.0) {
  std::srand(static_cast<unsigned>(seed));
  const Matrix a = Matrix::Random(dim, dim);
  return scale * 0.5 * (a + a.adjoint());
}

}  // namespace cartan::testing
