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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "gramscope/gram.hpp"
#include "gramscope/sdp.hpp"
#include "support.hpp"

using namespace gramscope;
using testing::max_abs;

namespace {

Knowledge full_knowledge(const RealMatrix& g) {
  Knowledge kn(static_cast<int>(g.rows()));
  for (int i = 0; i < g.rows(); ++i)
    for (int j = i; j < g.cols(); ++j) kn.add_exact(i, j, g(i, j));
  return kn;
}

Knowledge random_mask(int n, double density, Rng& rng, bool intervals) {
  std::bernoulli_distribution pick(density), coin(0.5);
  std::normal_distribution<double> nd;
  Knowledge kn(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      if (!pick(rng)) continue;
      double v = nd(rng);
      if (intervals && coin(rng))
        kn.add_interval(i, j, v - 0.3, v + 0.3);
      else
        kn.add_exact(i, j, v);
    }
  return kn;
}

// A random member of the knowledge set.
RealMatrix random_feasible(const Knowledge& kn, Rng& rng) {
  const int n = kn.size();
  RealMatrix f = testing::random_symmetric(n, rng, 2.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const auto& c : kn.constraints()) {
    double v = c.lo + (c.hi - c.lo) * u(rng);
    f(c.i, c.j) = f(c.j, c.i) = v;
  }
  return f;
}

double prox_objective(const RealMatrix& x, const RealMatrix& m, double sigma) {
  return x.trace() + 0.5 * sigma * (x - m).squaredNorm();
}

// max over subsets S of sum_{j in S} (lambda_j - 1), eigenpairs from the
// general solver, projectors built explicitly.
double conjugate_oracle(const RealMatrix& y) {
  Eigen::EigenSolver<RealMatrix> es(y);
  const int n = static_cast<int>(y.rows());
  RealMatrix vecs = es.eigenvectors().real();
  for (int j = 0; j < n; ++j) vecs.col(j).normalize();
  double best = 0.0;
  for (int mask = 0; mask < (1 << n); ++mask) {
    RealMatrix x = RealMatrix::Zero(n, n);
    int size = 0;
    for (int j = 0; j < n; ++j)
      if (mask & (1 << j)) {
        x += vecs.col(j) * vecs.col(j).transpose();
        ++size;
      }
    best = std::max(best, (y * x).trace() - size);
  }
  return best;
}

}  // namespace

TEST_CASE("fully determined problem") {
  RealMatrix g(2, 2);
  g << 1, 1, 1, 2;
  SolveResult res = solve_trace_min({full_knowledge(g), 3.0});
  CHECK(res.report.converged);
  CHECK(max_abs(res.g_hat - g) < 1e-6);
}

TEST_CASE("zero diagonal forces zero") {
  Knowledge kn(5);
  for (int i = 0; i < 5; ++i) kn.add_exact(i, i, 0.0);
  SolveResult res = solve_trace_min({kn, 7.0});
  CHECK(res.report.converged);
  CHECK(max_abs(res.g_hat) < 1e-8);
}

TEST_CASE("project_knowledge") {
  Rng rng(1);
  Knowledge kn(4);
  kn.add_exact(1, 3, 0.7);
  RealMatrix m = testing::random_symmetric(4, rng);
  RealMatrix p = project_knowledge(m, kn);
  CHECK(p(1, 3) == 0.7);
  CHECK(p(3, 1) == 0.7);
  CHECK(max_abs(project_knowledge(p, kn) - p) == 0.0);

  for (int t = 0; t < 10; ++t) {
    Knowledge mask = random_mask(6, 0.4, rng, true);
    RealMatrix x = testing::random_symmetric(6, rng, 2.0);
    RealMatrix px = project_knowledge(x, mask);
    for (int s = 0; s < 100; ++s) {
      RealMatrix f = random_feasible(mask, rng);
      CHECK((px - x).norm() <= (f - x).norm() + 1e-12);
    }
  }
}

TEST_CASE("prox of trace plus knowledge") {
  Knowledge none(3);
  CHECK(max_abs(prox_trace_plus_knowledge(RealMatrix::Identity(3, 3), none, 1.0)) ==
        0.0);

  Rng rng(2);
  RealMatrix g = testing::random_symmetric(4, rng);
  Knowledge all = full_knowledge(g);
  RealMatrix m = testing::random_symmetric(4, rng);
  CHECK(max_abs(prox_trace_plus_knowledge(m, all, 0.7) - project_knowledge(m, all)) ==
        0.0);

  std::normal_distribution<double> nd(0.0, 0.05);
  for (int t = 0; t < 5; ++t) {
    Knowledge mask = random_mask(6, 0.4, rng, true);
    RealMatrix x = testing::random_symmetric(6, rng, 2.0);
    const double sigma = 0.5 + t;
    RealMatrix p = prox_trace_plus_knowledge(x, mask, sigma);
    const double best = prox_objective(p, x, sigma);
    for (int s = 0; s < 1000; ++s) {
      RealMatrix pert = testing::random_symmetric(6, rng, 0.05);
      RealMatrix q = project_knowledge(p + pert, mask);
      CHECK(best <= prox_objective(q, x, sigma) + 1e-12);
    }
  }
}

TEST_CASE("rank conjugate") {
  CHECK(rank_conjugate(3.0 * RealMatrix::Identity(2, 2)) == doctest::Approx(4.0));
  Rng rng(3);
  for (int t = 0; t < 200; ++t) {
    RealMatrix y = testing::random_symmetric(3, rng, 1.5);
    CHECK(std::abs(rank_conjugate(y) - conjugate_oracle(y)) < 1e-9);
    RealVector ev = testing::eigenvalues_oracle(y);
    RealMatrix shrunk = 0.999 * y / std::max(1.0, ev.cwiseAbs().maxCoeff());
    CHECK(rank_conjugate(shrunk) == 0.0);
  }
}

TEST_CASE("feasibility report") {
  Knowledge kn(2);
  kn.add_exact(0, 0, 1.0);
  kn.add_interval(0, 1, 0.0, 0.5);
  RealMatrix g(2, 2);
  g << 1.25, 0.75, 0.75, -1.0;
  Feasibility f = feasibility(g, kn, 1.0);
  CHECK(f.exact_violation == doctest::Approx(0.25));
  CHECK(f.interval_violation == doctest::Approx(0.25));
  CHECK(f.min_eigenvalue < 0.0);
  CHECK(f.norm_excess > 0.0);
}

TEST_CASE("problem and option validation") {
  CHECK_THROWS_AS(SdpProblem({Knowledge(2), 0.0}).validate(),
                  std::invalid_argument);
  SolverOptions o;
  o.alpha = 2.0;
  CHECK_THROWS_AS(o.validate(), std::invalid_argument);
  o = {};
  o.primal_tol = 0.0;
  CHECK_THROWS_AS(o.validate(), std::invalid_argument);
  o = {};
  o.max_iters = 0;
  CHECK_THROWS_AS(o.validate(), std::invalid_argument);
}

TEST_CASE("solver invariants on a quantum instance") {
  Rng rng(4);
  EnsembleSpec spec;
  spec.states = 10;
  spec.measurements = 10;
  Ensemble ens = sample_ensemble(spec, rng);
  GramMatrix truth = gram(realize(ens, HermBasis(2)));
  SdpProblem prob{knowledge_projective(born_table(ens), 2), r_qm(10, 10, 2)};

  SolverOptions opts;
  opts.record_objective = true;
  SolveResult res = solve_trace_min(prob, opts);
  const auto& rep = res.report;
  REQUIRE(rep.converged);
  CHECK(rep.primal_residual <= opts.primal_tol);
  CHECK(rep.dual_residual <= opts.dual_tol);
  CHECK(rep.objective == doctest::Approx(res.g_hat.trace()));
  REQUIRE(static_cast<int>(rep.objective_history.size()) == rep.iterations);

  // Relaxation soundness: the truth is feasible.
  CHECK(res.g_hat.trace() <= truth.values.trace() + 1e-5);

  Feasibility f = feasibility(res.g_hat, prob.knowledge, prob.radius);
  CHECK(f.exact_violation <= 10 * opts.primal_tol);
  CHECK(f.min_eigenvalue >= -1e-12);
  CHECK(f.norm_excess <= 1e-12);

  // Tail of the run is non-increasing up to jitter.
  const auto& h = rep.objective_history;
  const std::size_t start = h.size() - h.size() / 10;
  for (std::size_t i = std::max<std::size_t>(start, 1); i < h.size(); ++i)
    CHECK(h[i] <= h[i - 1] + 1e-9);

  // Bit-identical on repeat; a warm start lands on the same point.
  SolveResult again = solve_trace_min(prob, opts);
  CHECK(again.report.iterations == rep.iterations);
  CHECK((again.g_hat.array() == res.g_hat.array()).all());
  SolveResult warm = solve_trace_min(prob, opts, &res.state);
  CHECK(warm.report.iterations < rep.iterations);
  CHECK(max_abs(warm.g_hat - res.g_hat) < 1e-6);
}

TEST_CASE("interval knowledge keeps the solution inside the box") {
  Rng rng(5);
  EnsembleSpec spec;
  spec.states = 6;
  spec.measurements = 6;
  Ensemble ens = sample_ensemble(spec, rng);
  Knowledge kn = knowledge_relax(knowledge_projective(born_table(ens), 2), 1e-3);
  SolveResult res = solve_trace_min({kn, r_qm(6, 6, 2)});
  CHECK(res.report.converged);
  Feasibility f = feasibility(res.g_hat, kn, r_qm(6, 6, 2));
  CHECK(f.interval_violation <= 1e-7);
  CHECK(f.exact_violation <= 1e-7);
}

TEST_CASE("adaptive rho stays deterministic") {
  Rng rng(6);
  EnsembleSpec spec;
  spec.states = 5;
  spec.measurements = 5;
  Ensemble ens = sample_ensemble(spec, rng);
  SdpProblem prob{knowledge_projective(born_table(ens), 2), 15.0};
  SolverOptions o;
  o.adaptive_rho = true;
  SolveResult a = solve_trace_min(prob, o), b = solve_trace_min(prob, o);
  CHECK(a.report.converged);
  CHECK((a.g_hat.array() == b.g_hat.array()).all());
  CHECK(a.report.final_rho == b.report.final_rho);
}

TEST_CASE("calibrated measurements are recovered") {
  // With the whole measurement block known, the states are pinned by the
  // data and the truth is the unique trace minimizer.
  Rng rng(7);
  for (int d = 2; d <= 3; ++d) {
    EnsembleSpec spec;
    spec.dim = d;
    spec.outcomes = d;
    spec.states = 2 * d * d;
    spec.measurements = d + 1;
    Ensemble ens = sample_ensemble(spec, rng);
    GramMatrix truth = gram(realize(ens, HermBasis(d)));
    Knowledge kn = knowledge_data_only(born_table(ens));
    for (int i = truth.states; i < truth.size(); ++i)
      for (int j = i; j < truth.size(); ++j) kn.add_exact(i, j, truth.values(i, j));
    SolveResult res = solve_trace_min(
        {kn, r_qm(spec.states, spec.measurements, d)});
    CHECK(res.report.converged);
    CHECK(max_abs(res.g_hat - truth.values) < 1e-3);
    CHECK(rank_certificate(res.g_hat, d * d, 1e-4));
  }
}
