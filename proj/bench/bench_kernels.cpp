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

// Serial reference versus OpenMP path for each batched kernel. The second
// argument of every benchmark selects the path: 0 serial, 1 parallel.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "cartan/batch.hpp"
#include "cartan/geodesic.hpp"
#include "cartan/metric.hpp"

namespace {

using namespace cartan;

Exec exec_of(const benchmark::State& state) { return state.range(1) == 0 ? Exec::serial : Exec::parallel; }

std::vector<RealVector> sum_zero_targets(int n, std::size_t count) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> spread(-1.5 * kPi, 1.5 * kPi);
  std::vector<RealVector> out;
  for (std::size_t t = 0; t < count; ++t) {
    RealVector x(n);
    for (int i = 0; i < n; ++i) x(i) = spread(rng);
    x.array() -= x.mean();
    out.push_back(x);
  }
  return out;
}

void BM_DecomposeBatch(benchmark::State& state) {
  const int qubits = static_cast<int>(state.range(0));
  const CartanSplit split = builtin_split(qubits, qubits == 2 ? SplitKind::two_local : SplitKind::ai);
  const auto corpus = haar_corpus(split.dim(), 64, 1, Exec::serial);
  for (auto _ : state) benchmark::DoNotOptimize(decompose_batch(corpus, split, exec_of(state)));
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(corpus.size()));
}
BENCHMARK(BM_DecomposeBatch)->ArgsProduct({{2, 3}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_ClosestPointBatch(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto targets = sum_zero_targets(n, 4096);
  for (auto _ : state) benchmark::DoNotOptimize(closest_point_batch(targets, {n}, exec_of(state)));
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(targets.size()));
}
BENCHMARK(BM_ClosestPointBatch)->ArgsProduct({{4, 8}, {0, 1}})->Unit(benchmark::kMicrosecond);

void BM_BruteforceBatch(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto targets = sum_zero_targets(n, 128);
  for (auto _ : state) benchmark::DoNotOptimize(bruteforce_batch(targets, 3, exec_of(state)));
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(targets.size()));
}
BENCHMARK(BM_BruteforceBatch)->ArgsProduct({{4, 8}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_PullbackGram(benchmark::State& state) {
  const int qubits = static_cast<int>(state.range(0));
  const CartanSplit split = builtin_split(qubits, qubits == 1 ? SplitKind::single_x : SplitKind::two_local);
  const PenaltyMetric metric(split, 0.01);
  const BasePoint base = random_base_point(split, 3, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(pullback_gram(base, metric, 1e-4, exec_of(state)));
}
BENCHMARK(BM_PullbackGram)->ArgsProduct({{1, 2}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_OptimizeRestarts(benchmark::State& state) {
  const CartanSplit split = builtin_split(1, SplitKind::single_x);
  const PenaltyMetric metric(split, 0.01);
  const Matrix target = haar_random_special_unitary(2, 11);
  OptimizeOptions opt;
  opt.restarts = static_cast<int>(state.range(0));
  opt.exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(optimize_path(target, metric, opt));
}
BENCHMARK(BM_OptimizeRestarts)->ArgsProduct({{4}, {0, 1}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
