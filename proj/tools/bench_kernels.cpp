// Copyright 2026 The xorgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Serial reference kernels against their OpenMP versions.

#include <benchmark/benchmark.h>

#include <omp.h>

#include "xorgame/matrix.hpp"
#include "xorgame/strategy.hpp"
#include "xorgame/sweep.hpp"

namespace {

using namespace xorgame;

ComplexMatrix random_square(std::size_t d, std::uint64_t seed) {
  Rng rng(seed);
  std::normal_distribution<double> normal;
  ComplexMatrix m(d, d);
  for (auto& x : m.entries()) x = Complex(normal(rng), normal(rng));
  return m;
}

void BM_MultiplySerial(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const ComplexMatrix a = random_square(d, 1), b = random_square(d, 2);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::multiply_serial(a, b));
  state.SetComplexityN(state.range(0));
}

void BM_MultiplyParallel(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const ComplexMatrix a = random_square(d, 1), b = random_square(d, 2);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::multiply_parallel(a, b));
  state.SetComplexityN(state.range(0));
}

void BM_GramTable(benchmark::State& state, bool parallel) {
  const auto d = static_cast<std::size_t>(state.range(0));
  std::vector<ComplexMatrix> xs, ys;
  for (std::uint64_t i = 0; i < 12; ++i) {
    xs.push_back(random_square(d, 10 + i));
    ys.push_back(random_square(d, 40 + i));
  }
  for (auto _ : state)
    benchmark::DoNotOptimize(parallel ? kernels::gram_table_parallel(xs, ys) : kernels::gram_table_serial(xs, ys));
}

SweepGrid small_grid() {
  SweepGrid grid;
  grid.ns = {2, 3};
  grid.thetas = {0.01, 0.05};
  grid.seeds = {1, 2};
  return grid;
}

void BM_SweepSerial(benchmark::State& state) {
  const SweepGrid grid = small_grid();
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep_serial(grid));
}

void BM_SweepParallel(benchmark::State& state) {
  const SweepGrid grid = small_grid();
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep_parallel(grid, omp_get_max_threads()));
}

}  // namespace

BENCHMARK(BM_MultiplySerial)->RangeMultiplier(2)->Range(16, 256)->Complexity();
BENCHMARK(BM_MultiplyParallel)->RangeMultiplier(2)->Range(16, 256)->Complexity();
BENCHMARK_CAPTURE(BM_GramTable, serial, false)->Arg(16)->Arg(64);
BENCHMARK_CAPTURE(BM_GramTable, parallel, true)->Arg(16)->Arg(64);
BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
