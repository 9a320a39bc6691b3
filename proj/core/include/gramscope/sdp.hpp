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

#ifndef GRAMSCOPE_SDP_HPP
#define GRAMSCOPE_SDP_HPP

#include <optional>
#include <vector>

#include "gramscope/gram.hpp"
#include "gramscope/herm.hpp"

namespace gramscope {

/// minimize tr G  subject to  G_Omega = K (or within intervals),
///                            0 <= G <= radius * I.
struct SdpProblem {
  Knowledge knowledge;
  double radius = 0.0;

  int size() const { return knowledge.size(); }
  void validate() const;
};

struct SolverOptions {
  int max_iters = 200000;
  double rho = 1.0;
  double alpha = 1.6;  // over-relaxation, in [1, 2)
  double primal_tol = 1e-8;
  double dual_tol = 1e-8;
  /// Residual balancing: rescale rho by 2 when one residual exceeds the
  /// other by 10x. Checked every `adapt_interval` iterations.
  bool adaptive_rho = false;
  int adapt_interval = 50;
  /// Keep tr(G) of every iterate in SolverReport::objective_history.
  bool record_objective = false;

  void validate() const;
};

struct SolverReport {
  int iterations = 0;
  double primal_residual = 0.0;  // ||X - Z||_F
  double dual_residual = 0.0;    // rho ||Z - Z_prev||_F
  double objective = 0.0;        // tr(G_hat)
  bool converged = false;
  double seconds = 0.0;
  double final_rho = 0.0;
  std::vector<double> objective_history;
};

/// Iterates from a previous solve. `dual` is the scaled dual U.
struct WarmStart {
  RealMatrix primal;
  RealMatrix dual;
};

struct SolveResult {
  RealMatrix g_hat;
  SolverReport report;
  WarmStart state;
};

/// ADMM on the split  tr(X) + 1_knowledge(X) + 1_box(Z),  X = Z.
///
/// The returned matrix is the spectral-box iterate Z, so it is exactly PSD
/// with operator norm <= radius; knowledge holds to within the primal
/// residual. Non-convergence is reported, not thrown.
SolveResult solve_trace_min(const SdpProblem& prob,
                            const SolverOptions& opts = {},
                            const WarmStart* warm = nullptr);

/// Frobenius projection onto the knowledge set: exact entries overwritten,
/// interval entries clamped, both (i, j) and (j, i).
RealMatrix project_knowledge(const RealMatrix& m, const Knowledge& kn);

/// argmin_X tr(X) + (sigma/2) ||X - M||_F^2 over the knowledge set.
RealMatrix prox_trace_plus_knowledge(const RealMatrix& m, const Knowledge& kn,
                                     double sigma);

/// Conjugate of the rank function on the operator-norm unit ball:
/// sum_j max(lambda_j(Y) - 1, 0).
double rank_conjugate(const RealMatrix& y);

struct Feasibility {
  double exact_violation = 0.0;     // max |G_ij - value|
  double interval_violation = 0.0;  // max distance outside [lo, hi]
  double min_eigenvalue = 0.0;
  double norm_excess = 0.0;  // max(||G|| - radius, 0)
};

Feasibility feasibility(const RealMatrix& g, const Knowledge& kn,
                        double radius);

}  // namespace gramscope

#endif  // GRAMSCOPE_SDP_HPP
