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

#ifndef GRAMSCOPE_ESTIMATOR_HPP
#define GRAMSCOPE_ESTIMATOR_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "gramscope/gram.hpp"
#include "gramscope/sdp.hpp"
#include "gramscope/synth.hpp"

namespace gramscope {

enum class KnowledgeMode { kProjective, kDataOnly };
enum class AugmentFirst { kState, kMeasurement };

/// One synthetic run of the estimation loop.
struct TrialConfig {
  int dim = 2;
  int states = 5;        // W at the start point
  int measurements = 5;  // V at the start point
  int outcomes = 2;      // K
  StateKind state_kind = StateKind::kPure;
  MeasurementKind measurement_kind = MeasurementKind::kProjective;
  std::vector<int> degeneracies;
  KnowledgeMode knowledge = KnowledgeMode::kProjective;
  AugmentFirst augment_first = AugmentFirst::kState;
  int max_augmentations = 20;
  double tau = 1e-4;
  double failure_threshold = 1e-3;
  /// Half-width of the data-block intervals; 0 keeps them exact.
  double epsilon = 0.0;
  /// Shots per (state, measurement); empty means exact probabilities.
  std::optional<std::uint64_t> shots;
  std::uint64_t seed = 0;
  /// Fixed target rank; by default min(rank(D), d^2) with rank_rel_tol.
  std::optional<int> target_rank;
  double rank_rel_tol = 1e-6;
  bool warm_start = true;
  SolverOptions solver;

  EnsembleSpec ensemble_spec() const;
  void validate() const;
};

struct GramEstimate {
  GramMatrix g_hat;
  bool certified = false;
  int target_rank = 0;
  double tau = 1e-4;
  double rank_tail = 0.0;
  int augmentations = 0;
  int added_states = 0;
  int added_measurements = 0;
  int total_iterations = 0;
  double total_seconds = 0.0;
  double radius = 0.0;
  SolverReport report;  // last solve
  std::optional<RealMatrix> factor;
};

/// Per-solve trace of the augmentation loop.
struct Round {
  int states = 0;
  int measurements = 0;
  std::size_t constraints = 0;
  int target_rank = 0;
  double rank_tail = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct TrialOutcome {
  GramEstimate estimate;
  Ensemble truth;
  DataTable data;
  Knowledge knowledge;
  std::vector<Round> rounds;
};

/// Solve, certify, and while the rank certificate fails and budget remains,
/// alternately add a state or a measurement and re-solve.
TrialOutcome estimate(const TrialConfig& cfg, Rng& rng);

/// Same, seeding the engine from cfg.seed.
TrialOutcome estimate(const TrialConfig& cfg);

/// Single solve + certificate on fixed knowledge; nothing to augment.
GramEstimate estimate_from_knowledge(const Knowledge& kn, double radius,
                                     int target_rank, double tau,
                                     const SolverOptions& opts,
                                     const WarmStart* warm = nullptr);

/// Knowledge from measured data (projective, optionally relaxed by eps),
/// radius W + V d, target rank min(rank(D), d^2).
GramEstimate estimate_from_data(
    const DataTable& table, int dim,
    const std::vector<std::vector<int>>& degeneracies, double tau,
    double eps, const SolverOptions& opts);

struct Metrics {
  double max_entry_error = 0.0;
  double frobenius_error = 0.0;
  bool success = false;  // max_entry_error < threshold
  double rank_tail = 0.0;
  double data_block_error = 0.0;  // vs Born probabilities of the truth
  double trace_gap = 0.0;         // tr(G_hat) - tr(G_true)
};

Metrics evaluate(const GramEstimate& est, const Ensemble& truth,
                 const HermBasis& basis, double threshold = 1e-3);

/// P_hat = diag(sqrt(lambda_1..r)) U_r^T from the top r eigenpairs, so that
/// P_hat^T P_hat is the best rank-r PSD approximation. Throws if a top-r
/// eigenvalue is below -1e-8.
RealMatrix factor(const RealMatrix& g, int rank);

/// min over orthogonal O of ||O P_a - P_b||_F (orthogonal Procrustes).
double gauge_distance(const RealMatrix& p_a, const RealMatrix& p_b);

/// Embeds an N_old x N_old matrix after `added_states` new state rows were
/// inserted at index `old_states` and trailing measurement rows appended;
/// new rows/columns are zero.
RealMatrix embed_gram(const RealMatrix& m, int old_states, int added_states,
                      int new_size);

}  // namespace gramscope

#endif  // GRAMSCOPE_ESTIMATOR_HPP
