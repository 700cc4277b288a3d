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

#include "cartan/batch.hpp"

namespace cartan {
namespace {

template <typename Out, typename In, typename F>
std::vector<Out> map_batch(const std::vector<In>& in, Exec exec, F&& f) {
  std::vector<Out> out(in.size());
  for_each_index(in.size(), exec, [&](std::size_t i) { out[i] = f(in[i]); });
  return out;
}

}  // namespace

std::vector<KakFactors> decompose_batch(const std::vector<Matrix>& unitaries, const CartanSplit& split, Exec exec) {
  return map_batch<KakFactors>(unitaries, exec, [&](const Matrix& u) { return kak_decompose(u, split); });
}

std::vector<double> reconstruction_residuals(const std::vector<Matrix>& unitaries, const CartanSplit& split,
                                             Exec exec) {
  return map_batch<double>(unitaries, exec,
                           [&](const Matrix& u) { return (reconstruct(kak_decompose(u, split)) - u).norm(); });
}

std::vector<CostReport> optimal_cost_batch(const std::vector<Matrix>& unitaries, const CartanSplit& split, Exec exec) {
  return map_batch<CostReport>(unitaries, exec, [&](const Matrix& u) { return optimal_cost(u, split); });
}

std::vector<LatticePoint> closest_point_batch(const std::vector<RealVector>& targets, const SumZeroLattice& lattice,
                                              Exec exec) {
  return map_batch<LatticePoint>(targets, exec, [&](const RealVector& x) {
    return closest_lattice_point(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())), lattice);
  });
}

std::vector<LatticePoint> bruteforce_batch(const std::vector<RealVector>& targets, int radius, Exec exec) {
  return map_batch<LatticePoint>(targets, exec, [&](const RealVector& x) {
    return closest_lattice_point_bruteforce(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())),
                                            radius);
  });
}

std::vector<Matrix> haar_corpus(int dim, std::size_t count, std::uint64_t seed, Exec exec) {
  std::vector<Matrix> out(count);
  for_each_index(count, exec, [&](std::size_t i) { out[i] = haar_random_special_unitary(dim, seed + i); });
  return out;
}

}  // namespace cartan
