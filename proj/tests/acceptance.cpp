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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Tolerances are fixed here, not configurable.

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "gramscope/batch.hpp"
#include "gramscope/estimator.hpp"
#include "gramscope/gram.hpp"
#include "gramscope/io.hpp"
#include "gramscope/logging.hpp"
#include "gramscope/sdp.hpp"
#include "gramscope/theory.hpp"

using namespace gramscope;

namespace {

constexpr std::uint64_t kMasterSeed = 20130101;

struct Verdict {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, const std::function<Verdict()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Verdict v = body();
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("criterion %2d %s  %s  [%s] (%.1fs)\n", id, v.pass ? "PASS" : "FAIL",
              title.c_str(), v.detail.c_str(), secs);
  std::fflush(stdout);
  failures += !v.pass;
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), f, a);
  return buf;
}

BatchSpec table_one_d2(int jobs) {
  BatchSpec spec;
  spec.master_seed = kMasterSeed;
  spec.jobs = jobs;
  BatchTemplate t;
  t.name = "d2";
  t.trials = 50;
  t.config.dim = 2;
  t.config.states = 5;
  t.config.measurements = 5;
  t.config.outcomes = 2;
  spec.templates = {t};
  return spec;
}

EnsembleSpec random_spec(Rng& rng, int d) {
  std::uniform_int_distribution<int> count(1, 12), coin(0, 2);
  EnsembleSpec s;
  s.dim = d;
  s.states = count(rng);
  s.measurements = count(rng);
  s.state_kind = coin(rng) == 0 ? StateKind::kMixed : StateKind::kPure;
  switch (coin(rng)) {
    case 0:
      s.measurement_kind = MeasurementKind::kPovm;
      s.outcomes = std::uniform_int_distribution<int>(1, 2 * d)(rng);
      break;
    case 1:
      s.outcomes = d - 1;
      s.degeneracies.assign(static_cast<std::size_t>(d - 1), 1);
      s.degeneracies[0] = 2;
      break;
    default:
      s.outcomes = d;
  }
  return s;
}

double effect_norm_sum(const std::vector<ComplexMatrix>& povm) {
  double s = 0.0;
  for (const auto& e : povm) s += e.squaredNorm();
  return s;
}

}  // namespace

int main() {
  set_log_level("error");
  std::printf("acceptance: master seed %llu\n",
              static_cast<unsigned long long>(kMasterSeed));

  BatchResult d2;
  std::string d2_dump;
  std::vector<TrialRecord> certified_records;

  report(1, "d=2 (5,5) K=2, 50 trials", [&] {
    d2 = run_batch(table_one_d2(1));
    d2_dump = dump(to_json(d2.report));
    const auto& s = d2.report.templates.at(0);
    double worst_tail = 0.0;
    for (const auto& r : d2.records) {
      if (r.certified) worst_tail = std::max(worst_tail, r.metrics.rank_tail);
    }
    Verdict v;
    v.pass = s.failures == 0 && s.certified == 50 && s.zero_augmentation == 50 &&
             s.errors == 0 && worst_tail <= 1e-4;
    v.detail = "successes=" + std::to_string(s.successes) +
               " failures=" + std::to_string(s.failures) +
               " certified=" + std::to_string(s.certified) +
               " zero_aug=" + std::to_string(s.zero_augmentation) +
               " errors=" + std::to_string(s.errors) +
               fmt(" max_err=%.3g", s.max_max_entry_error);
    return v;
  });
  for (const auto& r : d2.records)
    if (r.certified) certified_records.push_back(r);

  report(2, "d=3 (60,100) K=3, 1 trial", [&] {
    BatchSpec spec;
    spec.master_seed = kMasterSeed;
    BatchTemplate t;
    t.name = "d3";
    t.trials = 1;
    t.config.dim = 3;
    t.config.states = 60;
    t.config.measurements = 100;
    t.config.outcomes = 3;
    spec.templates = {t};
    BatchResult res = run_batch(spec);
    const auto& s = res.report.templates.at(0);
    for (const auto& r : res.records)
      if (r.certified) certified_records.push_back(r);
    bool rank9 = true;
    for (const auto& r : res.records) rank9 = rank9 && r.metrics.rank_tail <= 1e-4;
    Verdict v;
    v.pass = s.failures == 0 && s.certified == s.trials && rank9;
    v.detail = "successes=" + std::to_string(s.successes) +
               " failures=" + std::to_string(s.failures) +
               " certified=" + std::to_string(s.certified) +
               fmt(" max_err=%.3g", s.max_max_entry_error) +
               fmt(" iterations=%.0f", s.mean_iterations);
    return v;
  });

  report(3, "rank(D) = d^2 on 100 d=2 and 100 d=3 ensembles", [&] {
    Rng rng(kMasterSeed + 3);
    int hits = 0, total = 0;
    for (int d : {2, 3}) {
      EnsembleSpec spec;
      spec.dim = d;
      spec.outcomes = d;
      spec.states = d == 2 ? 5 : 60;
      spec.measurements = d == 2 ? 5 : 100;
      for (int t = 0; t < 100; ++t) {
        DataTable table = born_table(sample_ensemble(spec, rng));
        hits += numerical_rank(table.values, 1e-6) == d * d;
        ++total;
      }
    }
    return Verdict{hits == total, std::to_string(hits) + "/" + std::to_string(total)};
  });

  report(4, "||G|| <= W + V d on 1000 ensembles, d in {2,3,4}", [&] {
    Rng rng(kMasterSeed + 4);
    int violations = 0, equality_checked = 0, equality_misses = 0;
    double worst = -1e300;
    for (int t = 0; t < 1000; ++t) {
      const int d = 2 + t % 3;
      EnsembleSpec spec = random_spec(rng, d);
      Ensemble ens = sample_ensemble(spec, rng);
      RealMatrix g = gram(realize(ens, HermBasis(d))).values;
      const double margin = operator_norm(g) - r_qm(spec.states, spec.measurements, d);
      worst = std::max(worst, margin);
      violations += margin > 1e-9;
      if (spec.measurement_kind == MeasurementKind::kProjective &&
          spec.degeneracies.empty()) {
        for (const auto& povm : ens.povms) {
          ++equality_checked;
          equality_misses += std::abs(effect_norm_sum(povm) - d) > 1e-9;
        }
      }
    }
    Verdict v;
    v.pass = violations == 0 && equality_misses == 0 && equality_checked > 0;
    v.detail = "violations=" + std::to_string(violations) +
               fmt(" worst_margin=%.3g", worst) +
               " equality=" + std::to_string(equality_checked - equality_misses) + "/" +
               std::to_string(equality_checked);
    return v;
  });

  report(5, "rank* oracle on 500 random 3x3 Y, 1e5 samples each", [&] {
    Rng rng(kMasterSeed + 5);
    CheckResult c = check_rank_conjugate(3, 500, 100000, rng, 1e-9);
    return Verdict{c.passed && c.cases > 0,
                   "cases=" + std::to_string(c.cases) +
                       " violations=" + std::to_string(c.violations) +
                       fmt(" worst=%.3g", c.worst)};
  });

  report(6, "tr X <= R rank X on 1000 clipped matrices, R=5", [&] {
    Rng rng(kMasterSeed + 6);
    std::size_t cases = 0, violations = 0;
    for (int n = 1; n <= 8; ++n) {
      CheckResult c = check_envelope(n, 125, 5.0, rng);
      cases += c.cases;
      violations += c.violations;
    }
    return Verdict{violations == 0 && cases == 1000,
                   "cases=" + std::to_string(cases) +
                       " violations=" + std::to_string(violations)};
  });

  report(7, "tr(G_hat) <= tr(G) + 1e-5 on certified trials", [&] {
    int bad = 0;
    double worst = -1e300;
    for (const auto& r : certified_records) {
      worst = std::max(worst, r.metrics.trace_gap);
      bad += r.metrics.trace_gap > 1e-5;
    }
    return Verdict{bad == 0 && !certified_records.empty(),
                   "certified=" + std::to_string(certified_records.size()) +
                       " violations=" + std::to_string(bad) +
                       fmt(" worst_gap=%.3g", worst)};
  });

  report(8, "gauge recovery on certified d=2 trials", [&] {
    int checked = 0, bad = 0;
    double worst_repro = 0.0, worst_gauge = 0.0;
    for (const auto& r : d2.records) {
      if (!r.certified) continue;
      ++checked;
      worst_repro = std::max(worst_repro, r.factor_data_error);
      worst_gauge = std::max(worst_gauge, r.gauge_distance);
      bad += !(r.factor_data_error >= 0.0 && r.factor_data_error < 1e-3 &&
               r.gauge_distance >= 0.0 && r.gauge_distance < 1e-2);
    }
    return Verdict{bad == 0 && checked > 0,
                   "checked=" + std::to_string(checked) + " bad=" + std::to_string(bad) +
                       fmt(" worst_repro=%.3g", worst_repro) +
                       fmt(" worst_gauge=%.3g", worst_gauge)};
  });

  report(9, "finite shots N=1e6, eps=5e-3, tau=1e-2 (10 trials)", [&] {
    int feasible = 0, certified = 0;
    double worst = 0.0;
    const int trials = 10;
    for (int t = 0; t < trials; ++t) {
      TrialConfig cfg;
      cfg.shots = 1000000;
      cfg.epsilon = 5e-3;
      cfg.tau = 1e-2;
      cfg.seed = trial_seed(kMasterSeed + 9, 0, static_cast<std::size_t>(t));
      TrialOutcome out = estimate(cfg);
      const auto& est = out.estimate;
      Feasibility f = feasibility(est.g_hat.values, out.knowledge, est.radius);
      const double tol = 10 * cfg.solver.primal_tol;
      const double v = std::max({f.exact_violation, f.interval_violation,
                                 -f.min_eigenvalue, f.norm_excess});
      worst = std::max(worst, v);
      feasible += est.report.converged && v <= tol;
      certified += est.target_rank == 4 &&
                   rank_certificate(est.g_hat.values, 4, 1e-2);
    }
    return Verdict{feasible == trials && certified == trials,
                   "feasible=" + std::to_string(feasible) +
                       " certified=" + std::to_string(certified) + "/" +
                       std::to_string(trials) + fmt(" worst_violation=%.3g", worst)};
  });

  report(10, "criterion 1 repeated with the same seed (2 workers)", [&] {
    BatchResult again = run_batch(table_one_d2(2));
    const bool same = dump(to_json(again.report)) == d2_dump;
    return Verdict{same, same ? "BatchReport byte-identical" : "BatchReport differs"};
  });

  std::printf("acceptance: %d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
