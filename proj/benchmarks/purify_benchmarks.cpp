// Copyright 2026 The purify Authors
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

#include <benchmark/benchmark.h>

#include <cmath>

#include "purify/dephasing.hpp"
#include "purify/distinguishability.hpp"
#include "purify/histogram_fit.hpp"
#include "purify/permanent.hpp"
#include "purify/protocol.hpp"

namespace purify {
namespace {

ComplexMatrix random_matrix(int n) {
  std::srand(static_cast<unsigned>(n));
  return ComplexMatrix::Random(n, n);
}

ComplexMatrix random_gram(int n) {
  std::srand(static_cast<unsigned>(100 + n));
  ComplexMatrix v = ComplexMatrix::Random(3, n);
  v.colwise().normalize();
  return v.adjoint() * v;
}

void BM_Permanent(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto kernel = static_cast<Kernel>(state.range(1));
  const ComplexMatrix a = random_matrix(n);
  for (auto _ : state) benchmark::DoNotOptimize(permanent(a, kernel));
}
BENCHMARK(BM_Permanent)
    ->ArgsProduct({{4, 6, 8}, {static_cast<int>(Kernel::kNaive), static_cast<int>(Kernel::kGlynn)}});

void BM_Multipermanent(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto kernel = static_cast<Kernel>(state.range(1));
  const ComplexMatrix b = random_matrix(n);
  const ComplexMatrix s = random_gram(n);
  for (auto _ : state) benchmark::DoNotOptimize(multipermanent(b, s, kernel));
}
BENCHMARK(BM_Multipermanent)
    ->Args({4, static_cast<int>(Kernel::kNaive)})
    ->Args({5, static_cast<int>(Kernel::kNaive)})
    ->Args({4, static_cast<int>(Kernel::kGlynn)})
    ->Args({6, static_cast<int>(Kernel::kGlynn)})
    ->Args({8, static_cast<int>(Kernel::kGlynn)});

void BM_PurifiedVisibility(benchmark::State& state) {
  NoiseConfig config;
  config.g2 = static_cast<double>(state.range(0)) / 100.0;
  for (auto _ : state) benchmark::DoNotOptimize(purified_visibility(std::sqrt(0.9), config));
}
BENCHMARK(BM_PurifiedVisibility)->Arg(0)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_SampleOverlaps(benchmark::State& state) {
  const DephasingParams p{1.0, 0.1, {}};
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample_dephased_overlaps(p, 4, 10, ++seed));
}
BENCHMARK(BM_SampleOverlaps)->Unit(benchmark::kMillisecond);

void BM_Fit(benchmark::State& state) {
  const ModelCounts m = raw_count_model(0.3, 0.9, 3e8);
  const PeakCounts counts{m.central, m.side, 10e6, 30.0};
  for (auto _ : state) benchmark::DoNotOptimize(fit(counts, SetupGeometry{}));
}
BENCHMARK(BM_Fit)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace purify

BENCHMARK_MAIN();
