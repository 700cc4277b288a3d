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

#include <vector>

#include "cartan/cost.hpp"
#include "cartan/exec.hpp"

namespace cartan {

// Batched kernels. Exec::parallel runs items as OpenMP tasks; Exec::serial
// is the reference the parallel path is tested against. Results are stored
// by index, so both policies return identical vectors.

std::vector<KakFactors> decompose_batch(const std::vector<Matrix>& unitaries, const CartanSplit& split, Exec exec);

/// |reconstruct(kak(U)) - U|_F for every input.
std::vector<double> reconstruction_residuals(const std::vector<Matrix>& unitaries, const CartanSplit& split,
                                             Exec exec);

std::vector<CostReport> optimal_cost_batch(const std::vector<Matrix>& unitaries, const CartanSplit& split, Exec exec);

std::vector<LatticePoint> closest_point_batch(const std::vector<RealVector>& targets, const SumZeroLattice& lattice,
                                              Exec exec);

std::vector<LatticePoint> bruteforce_batch(const std::vector<RealVector>& targets, int radius, Exec exec);

/// Seeded Haar-random SU(N) corpus; item i uses seed + i.
std::vector<Matrix> haar_corpus(int dim, std::size_t count, std::uint64_t seed, Exec exec);

}  // namespace cartan
