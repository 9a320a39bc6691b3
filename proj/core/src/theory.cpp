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

#include "gramscope/theory.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "gramscope/gram.hpp"
#include "gramscope/sdp.hpp"

namespace gramscope {
namespace {

int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

double uniform_real(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

RealMatrix random_symmetric(int n, double scale, Rng& rng) {
  std::normal_distribution<double> normal(0.0, scale);
  RealMatrix a(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) a(i, j) = normal(rng);
  }
  return 0.5 * (a + a.transpose());
}

RealMatrix haar_orthogonal(int n, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  RealMatrix a(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) a(i, j) = normal(rng);
  }
  Eigen::HouseholderQR<RealMatrix> qr(a);
  RealMatrix q = qr.householderQ();
  for (int j = 0; j < n; ++j) {
    if (qr.matrixQR()(j, j) < 0.0) q.col(j) *= -1.0;
  }
  return q;
}

std::vector<int> random_partition(int dim, Rng& rng) {
  std::vector<int> parts;
  int left = dim;
  while (left > 0) {
    const int m = uniform_int(rng, 1, left);
    parts.push_back(m);
    left -= m;
  }
  return parts;
}

// One of: projective non-degenerate, projective with a random degeneracy
// pattern, or a generic POVM with 1..4 outcomes.
EnsembleSpec random_spec(int dim, Rng& rng) {
  EnsembleSpec spec;
  spec.dim = dim;
  spec.states = uniform_int(rng, 1, 6);
  spec.measurements = uniform_int(rng, 1, 6);
  spec.state_kind = uniform_int(rng, 0, 1) ? StateKind::kPure : StateKind::kMixed;
  switch (uniform_int(rng, 0, 2)) {
    case 0:
      spec.outcomes = dim;
      break;
    case 1:
      spec.degeneracies = random_partition(dim, rng);
      spec.outcomes = static_cast<int>(spec.degeneracies.size());
      break;
    default:
      spec.measurement_kind = MeasurementKind::kPovm;
      spec.outcomes = uniform_int(rng, 1, 4);
      break;
  }
  return spec;
}

std::string describe(const EnsembleSpec& s) {
  std::ostringstream os;
  os << "d=" << s.dim << " W=" << s.states << " V=" << s.measurements
     << " K=" << s.outcomes
     << (s.state_kind == StateKind::kPure ? " pure" : " mixed")
     << (s.measurement_kind == MeasurementKind::kPovm ? " povm" : " projective");
  if (!s.degeneracies.empty()) {
    os << " degeneracies=(";
    for (std::size_t i = 0; i < s.degeneracies.size(); ++i) {
      os << (i ? "," : "") << s.degeneracies[i];
    }
    os << ")";
  }
  return os.str();
}

std::string num(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

std::string describe(const RealMatrix& m) {
  std::ostringstream os;
  os.precision(17);
  os << m;
  return os.str();
}

void record(CheckResult& r, double margin, double tol,
            const std::string& example) {
  ++r.cases;
  r.worst = std::max(r.worst, margin);
  if (margin > tol) {
    if (r.violations == 0) r.counterexample = example;
    ++r.violations;
    r.passed = false;
  }
}

double effect_norm_sum(const std::vector<ComplexMatrix>& povm) {
  double total = 0.0;
  for (const auto& e : povm) total += e.squaredNorm();
  return total;
}

}  // namespace

bool TheoryReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.passed; });
}

RealVector eigenvalues_general(const RealMatrix& m) {
  Eigen::EigenSolver<RealMatrix> solver(m, false);
  RealVector values = solver.eigenvalues().real();
  std::sort(values.data(), values.data() + values.size(), std::greater<>());
  return values;
}

double rank_conjugate_bruteforce(const RealMatrix& y) {
  const int n = static_cast<int>(y.rows());
  if (n > 20) throw std::invalid_argument("rank_conjugate_bruteforce: n > 20");
  Eigen::EigenSolver<RealMatrix> solver(y, true);
  std::vector<RealMatrix> projectors;
  for (int j = 0; j < n; ++j) {
    RealVector v = solver.eigenvectors().col(j).real();
    if (v.norm() < 1e-12) v = solver.eigenvectors().col(j).imag();
    v.normalize();
    projectors.push_back(v * v.transpose());
  }
  double best = 0.0;  // empty subset: X = 0
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    RealMatrix x = RealMatrix::Zero(n, n);
    int count = 0;
    for (int j = 0; j < n; ++j) {
      if (mask & (1u << j)) {
        x += projectors[j];
        ++count;
      }
    }
    best = std::max(best, (y * x).trace() - count);
  }
  return best;
}

CheckResult check_norm_bound(const std::vector<int>& dims, int trials,
                             Rng& rng, double tol) {
  CheckResult r;
  r.name = "norm_bound";
  const HermBasis* basis = nullptr;
  std::vector<HermBasis> bases;
  bases.reserve(dims.size());
  for (int d : dims) bases.emplace_back(d);
  for (int t = 0; t < trials; ++t) {
    const std::size_t which = static_cast<std::size_t>(t) % dims.size();
    basis = &bases[which];
    const EnsembleSpec spec = random_spec(dims[which], rng);
    const Ensemble ens = sample_ensemble(spec, rng);
    const RealMatrix g = gram(realize(ens, *basis)).values;
    const double op = operator_norm(g);
    const double bound = r_qm(spec.states, spec.measurements, spec.dim);
    // ||G|| <= ||G||_2 <= ... and ||G|| <= W + V d
    const double margin = std::max(op - bound, op - g.norm());
    record(r, margin, tol,
           describe(spec) + " ||G||=" + num(op) +
               " bound=" + num(bound));
  }
  return r;
}

CheckResult check_effect_norms(const std::vector<int>& dims, int trials,
                               Rng& rng, double tol) {
  CheckResult r;
  r.name = "effect_norms";
  for (int d : dims) {
    // Trivial measurement {I}: ||I||_2^2 = d.
    const std::vector<ComplexMatrix> trivial{ComplexMatrix::Identity(d, d)};
    const double sum = effect_norm_sum(trivial);
    record(r, sum - d, tol, "trivial measurement d=" + std::to_string(d));
    if (std::abs(sum - d) <= tol) ++r.equality_cases;
  }
  for (int t = 0; t < trials; ++t) {
    const int d = dims[static_cast<std::size_t>(t) % dims.size()];
    const EnsembleSpec spec = random_spec(d, rng);
    const auto povm = sample_measurement(spec, rng);
    const double sum = effect_norm_sum(povm);
    const bool nondegenerate = spec.measurement_kind ==
                                   MeasurementKind::kProjective &&
                               spec.degeneracies.empty();
    // Projective non-degenerate measurements must attain the bound.
    const double margin = nondegenerate ? std::abs(sum - d) : sum - d;
    record(r, margin, tol,
           describe(spec) + " sum||E||^2=" + num(sum));
    if (std::abs(sum - d) <= tol) ++r.equality_cases;
  }
  return r;
}

CheckResult check_rank_conjugate(int n, int trials, int samples_per_matrix,
                                 Rng& rng, double tol) {
  CheckResult r;
  r.name = "rank_conjugate";
  for (int t = 0; t < trials; ++t) {
    const RealMatrix y = random_symmetric(n, uniform_real(rng, 0.3, 2.0), rng);
    const double value = rank_conjugate(y);

    // Oracle 1: maximum over eigenprojector subsets.
    const double brute = rank_conjugate_bruteforce(y);
    record(r, std::abs(value - brute), tol,
           "Y=\n" + describe(y) + "\nrank*=" + num(value) +
               " brute=" + num(brute));

    // Oracle 2: no feasible 0 <= X <= I beats it.
    double best_sample = 0.0;
    for (int s = 0; s < samples_per_matrix; ++s) {
      const RealMatrix q = haar_orthogonal(n, rng);
      const int m = uniform_int(rng, 0, n);
      double objective = -static_cast<double>(m);
      for (int j = 0; j < m; ++j) {
        const double mu = uniform_int(rng, 0, 3) == 0
                              ? 1.0
                              : uniform_real(rng, 0.0, 1.0);
        objective += mu * q.col(j).dot(y * q.col(j));
      }
      best_sample = std::max(best_sample, objective);
    }
    record(r, best_sample - value, tol,
           "Y=\n" + describe(y) + "\nsampled " + num(best_sample) +
               " > rank*=" + num(value));

    // Shrunk into the unit ball the conjugate vanishes.
    const double top = eigenvalues_general(y)(0);
    if (top > 0.0) {
      const RealMatrix inside = y * (uniform_real(rng, 0.0, 1.0) / top);
      record(r, rank_conjugate(inside), tol,
             "Y=\n" + describe(inside) + "\nhas all eigenvalues <= 1");
    }
  }
  return r;
}

CheckResult check_envelope(int n, int trials, double radius, Rng& rng) {
  CheckResult r;
  r.name = "envelope";
  for (int t = 0; t < trials; ++t) {
    RealMatrix m;
    if (uniform_int(rng, 0, 1) == 0) {
      m = random_symmetric(n, uniform_real(rng, 0.5, 3.0 * radius), rng);
    } else {
      // Low-rank PSD part plus a shift, so clipping hits both ends.
      const int k = uniform_int(rng, 1, n);
      std::normal_distribution<double> normal(0.0, uniform_real(rng, 0.5, 3.0));
      RealMatrix b(n, k);
      for (int j = 0; j < k; ++j) {
        for (int i = 0; i < n; ++i) b(i, j) = normal(rng);
      }
      m = b * b.transpose() -
          uniform_real(rng, 0.0, 1.0) * RealMatrix::Identity(n, n);
    }
    const RealMatrix x = clip_spectrum(m, 0.0, radius);
    const double trace = x.trace();
    const int rank = numerical_rank(x, 1e-9);
    record(r, trace - radius * rank, 1e-9,
           "X=\n" + describe(x) + "\ntr=" + num(trace) +
               " rank=" + std::to_string(rank));
  }
  return r;
}

TheoryReport check_theory(int n, int trials, std::uint64_t seed) {
  if (n < 1 || n > 6) {
    throw std::invalid_argument("check_theory: n must be in [1, 6]");
  }
  if (trials < 1) {
    throw std::invalid_argument("check_theory: trials must be >= 1");
  }
  std::vector<int> dims;
  for (int d = 1; d <= std::max(n, 2); ++d) dims.push_back(d);

  TheoryReport report;
  Rng rng(seed);
  report.checks.push_back(check_norm_bound(dims, trials, rng));
  report.checks.push_back(check_effect_norms(dims, trials, rng));
  report.checks.push_back(
      check_rank_conjugate(n, std::max(1, trials / 10), 1000, rng));
  report.checks.push_back(check_envelope(n, trials, 5.0, rng));
  return report;
}

}  // namespace gramscope
