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

#include "gramscope/estimator.hpp"
#include "gramscope/gram.hpp"
#include "gramscope/sdp.hpp"
#include "gramscope/synth.hpp"

namespace {

gramscope::SdpProblem table_problem(int d, int w, int v, std::uint64_t seed) {
  gramscope::Rng rng(seed);
  gramscope::EnsembleSpec spec;
  spec.dim = d;
  spec.outcomes = d;
  spec.states = w;
  spec.measurements = v;
  const auto ens = gramscope::sample_ensemble(spec, rng);
  return {gramscope::knowledge_projective(gramscope::born_table(ens), d),
          gramscope::r_qm(w, v, d)};
}

// Fixed iteration budget so the timing is per ADMM step, not per solve.
void BM_AdmmIterations(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const int w = static_cast<int>(state.range(1));
  const int v = static_cast<int>(state.range(2));
  const auto prob = table_problem(d, w, v, 1);
  gramscope::SolverOptions opts;
  opts.max_iters = 50;
  opts.primal_tol = opts.dual_tol = 1e-300;
  for (auto _ : state) benchmark::DoNotOptimize(gramscope::solve_trace_min(prob, opts));
  state.SetItemsProcessed(state.iterations() * opts.max_iters);
  state.counters["N"] = prob.size();
}
BENCHMARK(BM_AdmmIterations)
    ->Args({2, 5, 5})
    ->Args({2, 20, 20})
    ->Args({3, 20, 30})
    ->Args({3, 60, 100})
    ->Unit(benchmark::kMillisecond);

void BM_SolveD2(benchmark::State& state) {
  const auto prob = table_problem(2, 5, 5, 7);
  for (auto _ : state) benchmark::DoNotOptimize(gramscope::solve_trace_min(prob));
}
BENCHMARK(BM_SolveD2)->Unit(benchmark::kMillisecond);

void BM_EstimateD2(benchmark::State& state) {
  gramscope::TrialConfig cfg;
  cfg.seed = 3;
  cfg.max_augmentations = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gramscope::estimate(cfg));
}
BENCHMARK(BM_EstimateD2)->Arg(0)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace
