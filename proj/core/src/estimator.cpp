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

#include "gramscope/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "log.hpp"

namespace gramscope {
namespace {

struct RoundSolve {
  GramEstimate estimate;
  WarmStart state;
};

RoundSolve solve_round(const Knowledge& kn, double radius, int target_rank,
                       double tau, const SolverOptions& opts,
                       const WarmStart* warm) {
  SdpProblem prob{kn, radius};
  SolveResult solved = solve_trace_min(prob, opts, warm);

  RoundSolve out;
  GramEstimate& est = out.estimate;
  est.g_hat.values = std::move(solved.g_hat);
  est.g_hat.states = kn.data_rows();
  est.g_hat.effects = kn.size() - kn.data_rows();
  est.target_rank = target_rank;
  est.tau = tau;
  est.radius = radius;
  est.rank_tail = rank_tail(est.g_hat.values, target_rank);
  est.certified = est.rank_tail <= tau;
  est.report = solved.report;
  est.total_iterations = solved.report.iterations;
  est.total_seconds = solved.report.seconds;
  out.state = std::move(solved.state);
  return out;
}

int default_target_rank(const DataTable& table, int dim, double rel_tol) {
  return std::min(numerical_rank(table.values, rel_tol), dim * dim);
}

Knowledge build_knowledge(const TrialConfig& cfg, const DataTable& table) {
  Knowledge kn;
  if (cfg.knowledge == KnowledgeMode::kProjective) {
    std::vector<std::vector<int>> degeneracies;
    if (!cfg.degeneracies.empty()) degeneracies.push_back(cfg.degeneracies);
    kn = knowledge_projective(table, cfg.dim, degeneracies);
  } else {
    kn = knowledge_data_only(table);
  }
  return knowledge_relax(kn, cfg.epsilon, RelaxScope::kDataBlock);
}

void fill_row(DataTable& table, const Ensemble& ens, int w,
              const TrialConfig& cfg, Rng& rng) {
  const int k_out = table.outcomes;
  std::vector<double> probs(static_cast<std::size_t>(k_out));
  for (int v = 0; v < table.measurements; ++v) {
    for (int k = 0; k < k_out; ++k) {
      probs[k] = (ens.states[w].cwiseProduct(ens.povms[v][k].transpose()))
                     .sum()
                     .real();
    }
    if (cfg.shots) {
      probs = finite_shot_block(probs, *cfg.shots, rng);
    }
    for (int k = 0; k < k_out; ++k) table.values(w, v * k_out + k) = probs[k];
  }
}

void fill_measurement(DataTable& table, const Ensemble& ens, int v,
                      const TrialConfig& cfg, Rng& rng) {
  const int k_out = table.outcomes;
  std::vector<double> probs(static_cast<std::size_t>(k_out));
  for (int w = 0; w < table.states; ++w) {
    for (int k = 0; k < k_out; ++k) {
      probs[k] = (ens.states[w].cwiseProduct(ens.povms[v][k].transpose()))
                     .sum()
                     .real();
    }
    if (cfg.shots) {
      probs = finite_shot_block(probs, *cfg.shots, rng);
    }
    for (int k = 0; k < k_out; ++k) table.values(w, v * k_out + k) = probs[k];
  }
}

void add_state(Ensemble& ens, DataTable& table, const TrialConfig& cfg,
               Rng& rng) {
  ens.states.push_back(sample_state(cfg.ensemble_spec(), rng));
  table.states += 1;
  table.values.conservativeResize(table.states, Eigen::NoChange);
  fill_row(table, ens, table.states - 1, cfg, rng);
}

void add_measurement(Ensemble& ens, DataTable& table, const TrialConfig& cfg,
                     Rng& rng) {
  ens.povms.push_back(sample_measurement(cfg.ensemble_spec(), rng));
  table.measurements += 1;
  table.values.conservativeResize(Eigen::NoChange,
                                  table.measurements * table.outcomes);
  fill_measurement(table, ens, table.measurements - 1, cfg, rng);
}

}  // namespace

EnsembleSpec TrialConfig::ensemble_spec() const {
  EnsembleSpec spec;
  spec.dim = dim;
  spec.states = states;
  spec.measurements = measurements;
  spec.outcomes = outcomes;
  spec.state_kind = state_kind;
  spec.measurement_kind = measurement_kind;
  spec.degeneracies = degeneracies;
  return spec;
}

void TrialConfig::validate() const {
  ensemble_spec().validate();
  if (knowledge == KnowledgeMode::kProjective &&
      measurement_kind != MeasurementKind::kProjective) {
    throw std::invalid_argument(
        "TrialConfig: projective knowledge needs projective measurements");
  }
  if (max_augmentations < 0) {
    throw std::invalid_argument("TrialConfig: max_augmentations must be >= 0");
  }
  if (!(tau > 0.0) || !(failure_threshold > 0.0)) {
    throw std::invalid_argument("TrialConfig: tau and threshold must be > 0");
  }
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw std::invalid_argument("TrialConfig: epsilon must be >= 0");
  }
  if (shots && *shots == 0) {
    throw std::invalid_argument("TrialConfig: shots must be >= 1");
  }
  if (target_rank && *target_rank < 0) {
    throw std::invalid_argument("TrialConfig: target_rank must be >= 0");
  }
  if (!(rank_rel_tol > 0.0)) {
    throw std::invalid_argument("TrialConfig: rank_rel_tol must be > 0");
  }
  solver.validate();
}

GramEstimate estimate_from_knowledge(const Knowledge& kn, double radius,
                                     int target_rank, double tau,
                                     const SolverOptions& opts,
                                     const WarmStart* warm) {
  if (target_rank < 0 || target_rank > kn.size()) {
    throw std::invalid_argument("estimate: target rank out of range");
  }
  if (!(tau > 0.0)) {
    throw std::invalid_argument("estimate: tau must be > 0");
  }
  GramEstimate est =
      solve_round(kn, radius, target_rank, tau, opts, warm).estimate;
  if (est.certified && target_rank > 0) {
    est.factor = factor(est.g_hat.values, target_rank);
  }
  return est;
}

GramEstimate estimate_from_data(
    const DataTable& table, int dim,
    const std::vector<std::vector<int>>& degeneracies, double tau,
    double eps, const SolverOptions& opts) {
  const Knowledge kn = knowledge_relax(
      knowledge_projective(table, dim, degeneracies), eps,
      RelaxScope::kDataBlock);
  const double radius = r_qm(table.states, table.measurements, dim);
  return estimate_from_knowledge(kn, radius,
                                 default_target_rank(table, dim, 1e-6), tau,
                                 opts);
}

TrialOutcome estimate(const TrialConfig& cfg) {
  Rng rng(cfg.seed);
  return estimate(cfg, rng);
}

TrialOutcome estimate(const TrialConfig& cfg, Rng& rng) {
  cfg.validate();
  TrialOutcome out;
  out.truth = sample_ensemble(cfg.ensemble_spec(), rng);
  out.data = cfg.shots ? finite_shot_table(out.truth, *cfg.shots, rng)
                       : born_table(out.truth);

  WarmStart carried;
  bool have_warm = false;
  int prev_states = 0;
  int added_states_last = 0;
  int total_iterations = 0;
  double total_seconds = 0.0;

  for (int aug = 0;; ++aug) {
    out.knowledge = build_knowledge(cfg, out.data);
    const int w_count = out.data.states;
    const int v_count = out.data.measurements;
    const double radius = r_qm(w_count, v_count, cfg.dim);
    const int target = cfg.target_rank.value_or(
        default_target_rank(out.data, cfg.dim, cfg.rank_rel_tol));

    const WarmStart* warm = nullptr;
    WarmStart embedded;
    if (have_warm && cfg.warm_start) {
      const int n = out.knowledge.size();
      embedded.primal =
          embed_gram(carried.primal, prev_states, added_states_last, n);
      embedded.dual =
          embed_gram(carried.dual, prev_states, added_states_last, n);
      warm = &embedded;
    }

    RoundSolve round =
        solve_round(out.knowledge, radius, target, cfg.tau, cfg.solver, warm);
    total_iterations += round.estimate.report.iterations;
    total_seconds += round.estimate.report.seconds;
    out.rounds.push_back({w_count, v_count, out.knowledge.count(), target,
                          round.estimate.rank_tail,
                          round.estimate.report.iterations,
                          round.estimate.report.converged});
    log::info("round {}: W={} V={} rank_tail={:.3e} iters={}", aug, w_count,
              v_count, round.estimate.rank_tail,
              round.estimate.report.iterations);

    out.estimate = std::move(round.estimate);
    out.estimate.augmentations = aug;
    out.estimate.added_states = w_count - cfg.states;
    out.estimate.added_measurements = v_count - cfg.measurements;
    out.estimate.total_iterations = total_iterations;
    out.estimate.total_seconds = total_seconds;

    if (out.estimate.certified || aug >= cfg.max_augmentations) break;

    carried = std::move(round.state);
    have_warm = true;
    prev_states = w_count;

    const bool state_turn = (aug % 2 == 0) ==
                            (cfg.augment_first == AugmentFirst::kState);
    if (state_turn) {
      add_state(out.truth, out.data, cfg, rng);
      added_states_last = 1;
    } else {
      add_measurement(out.truth, out.data, cfg, rng);
      added_states_last = 0;
    }
  }

  if (out.estimate.certified && out.estimate.target_rank > 0) {
    out.estimate.factor =
        factor(out.estimate.g_hat.values, out.estimate.target_rank);
  }
  return out;
}

Metrics evaluate(const GramEstimate& est, const Ensemble& truth,
                 const HermBasis& basis, double threshold) {
  const GramMatrix g_true = gram(realize(truth, basis));
  if (g_true.size() != est.g_hat.size()) {
    throw std::invalid_argument("evaluate: estimate is " +
                                std::to_string(est.g_hat.size()) +
                                "x, truth is " +
                                std::to_string(g_true.size()) + "x");
  }
  Metrics m;
  const RealMatrix diff = est.g_hat.values - g_true.values;
  m.max_entry_error = diff.size() ? diff.cwiseAbs().maxCoeff() : 0.0;
  m.frobenius_error = diff.norm();
  m.success = m.max_entry_error < threshold;
  m.rank_tail = est.rank_tail;
  const DataTable born = born_table(truth);
  const RealMatrix block =
      est.g_hat.values.topRightCorner(born.states, born.values.cols());
  m.data_block_error =
      born.values.size() ? (block - born.values).cwiseAbs().maxCoeff() : 0.0;
  m.trace_gap = est.g_hat.values.trace() - g_true.values.trace();
  return m;
}

RealMatrix factor(const RealMatrix& g, int rank) {
  if (rank < 1 || rank > g.rows()) {
    throw std::invalid_argument("factor: rank must be in [1, N]");
  }
  const SymEig eig = sym_eig(g);
  RealMatrix p(rank, g.rows());
  for (int j = 0; j < rank; ++j) {
    const double lambda = eig.values(j);
    if (lambda < -1e-8) {
      throw std::invalid_argument(
          "factor: top-r eigenvalue " + std::to_string(lambda) +
          " is negative; estimate is not PSD enough");
    }
    p.row(j) = std::sqrt(std::max(lambda, 0.0)) * eig.vectors.col(j).transpose();
  }
  return p;
}

double gauge_distance(const RealMatrix& p_a, const RealMatrix& p_b) {
  if (p_a.rows() != p_b.rows() || p_a.cols() != p_b.cols()) {
    throw std::invalid_argument("gauge_distance: shapes differ");
  }
  const RealMatrix cross = p_b * p_a.transpose();
  Eigen::JacobiSVD<RealMatrix> svd(cross,
                                   Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RealMatrix rotation = svd.matrixU() * svd.matrixV().transpose();
  return (rotation * p_a - p_b).norm();
}

RealMatrix embed_gram(const RealMatrix& m, int old_states, int added_states,
                      int new_size) {
  const int old_size = static_cast<int>(m.rows());
  if (old_states < 0 || old_states > old_size || added_states < 0 ||
      new_size < old_size + added_states) {
    throw std::invalid_argument("embed_gram: inconsistent sizes");
  }
  const auto remap = [&](int i) { return i < old_states ? i : i + added_states; };
  RealMatrix out = RealMatrix::Zero(new_size, new_size);
  for (int j = 0; j < old_size; ++j) {
    for (int i = 0; i < old_size; ++i) {
      out(remap(i), remap(j)) = m(i, j);
    }
  }
  return out;
}

}  // namespace gramscope
