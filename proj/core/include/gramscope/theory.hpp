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

#ifndef GRAMSCOPE_THEORY_HPP
#define GRAMSCOPE_THEORY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "gramscope/herm.hpp"
#include "gramscope/synth.hpp"

namespace gramscope {

struct CheckResult {
  std::string name;
  bool passed = true;
  std::size_t cases = 0;
  std::size_t violations = 0;
  std::size_t equality_cases = 0;
  double worst = 0.0;  // largest observed violation margin
  std::string counterexample;
};

struct TheoryReport {
  std::vector<CheckResult> checks;
  bool all_passed() const;
};

/// ||G|| <= W + V d over random ensembles (pure and mixed states,
/// projective, degenerate and generic POVMs) for each d in `dims`.
CheckResult check_norm_bound(const std::vector<int>& dims, int trials,
                             Rng& rng, double tol = 1e-9);

/// sum_k ||E_k||_2^2 <= d for every generated measurement, with equality
/// for projective non-degenerate ones.
CheckResult check_effect_norms(const std::vector<int>& dims, int trials,
                               Rng& rng, double tol = 1e-9);

/// rank_conjugate against the maximum over subsets of eigenprojectors and
/// against random feasible points 0 <= X <= I.
CheckResult check_rank_conjugate(int n, int trials, int samples_per_matrix,
                                 Rng& rng, double tol = 1e-9);

/// tr(X) <= R rank(X) on random matrices clipped into 0 <= X <= R I.
CheckResult check_envelope(int n, int trials, double radius, Rng& rng);

/// All four checks; `n` bounds the dimension and matrix size.
TheoryReport check_theory(int n, int trials, std::uint64_t seed);

/// Eigenvalues of a symmetric matrix via the general (non-symmetric)
/// Hessenberg-QR solver, as an independent route for the oracles.
RealVector eigenvalues_general(const RealMatrix& m);

/// max over subsets S of sum_{j in S} (tr(Y P_j) - 1), P_j the eigenprojectors
/// of Y from the general solver.
double rank_conjugate_bruteforce(const RealMatrix& y);

}  // namespace gramscope

#endif  // GRAMSCOPE_THEORY_HPP
