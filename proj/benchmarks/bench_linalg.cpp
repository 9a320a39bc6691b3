// Copyright 2026 The gramscope Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <random>

#include "gramscope/gram.hpp"
#include "gramscope/herm.hpp"
#include "gramscope/sdp.hpp"

namespace {

gramscope::RealMatrix random_symmetric(int n) {
  std::mt19937_64 rng(n);
  std::normal_distribution<double> nd;
  gramscope::RealMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = nd(rng);
  return (0.5 * (a + a.transpose())).eval();
}

void BM_SymEig(benchmark::State& state) {
  const auto m = random_symmetric(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(gramscope::sym_eig(m));
}
BENCHMARK(BM_SymEig)->Arg(15)->Arg(60)->Arg(120)->Arg(360)->Unit(benchmark::kMicrosecond);

void BM_ClipSpectrum(benchmark::State& state) {
  const auto m = random_symmetric(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(gramscope::clip_spectrum(m, 0.0, 5.0));
}
BENCHMARK(BM_ClipSpectrum)->Arg(15)->Arg(120)->Arg(360)->Unit(benchmark::kMicrosecond);

void BM_RankConjugate(benchmark::State& state) {
  const auto m = random_symmetric(3);
  for (auto _ : state) benchmark::DoNotOptimize(gramscope::rank_conjugate(m));
}
BENCHMARK(BM_RankConjugate);

void BM_NumericalRank(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto m = random_symmetric(n);
  for (auto _ : state) benchmark::DoNotOptimize(gramscope::numerical_rank(m));
}
BENCHMARK(BM_NumericalRank)->Arg(15)->Arg(360)->Unit(benchmark::kMicrosecond);

}  // namespace
