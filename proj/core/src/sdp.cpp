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

#include "gramscope/sdp.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>

#include "log.hpp"

namespace gramscope {
namespace {

void require_shape(const RealMatrix& m, const Knowledge& kn,
                   const char* who) {
  if (m.rows() != kn.size() || m.cols() != kn.size()) {
    throw std::invalid_argument(std::string(who) + ": matrix is " +
                                std::to_string(m.rows()) + "x" +
                                std::to_string(m.cols()) +
                                ", knowledge N=" + std::to_string(kn.size()));
  }
}

// Nearest feasible value for a pair of mirrored entries with equal weight.
double clamp_pair(const Constraint& c, double a, double b) {
  if (c.kind == ConstraintKind::kExact) return c.lo;
  return std::clamp(0.5 * (a + b), c.lo, c.hi);
}

}  // namespace

void SdpProblem::validate() const {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw std::invalid_argument("SdpProblem: radius must be positive");
  }
  if (knowledge.size() < 1) {
    throw std::invalid_argument("SdpProblem: empty problem");
  }
}

void SolverOptions::validate() const {
  if (max_iters < 1) {
    throw std::invalid_argument("SolverOptions: max_iters must be >= 1");
  }
  if (!(rho > 0.0)) {
    throw std::invalid_argument("SolverOptions: rho must be > 0");
  }
  if (!(alpha >= 1.0 && alpha < 2.0)) {
    throw std::invalid_argument("SolverOptions: alpha must be in [1, 2)");
  }
  if (!(primal_tol > 0.0) || !(dual_tol > 0.0)) {
    throw std::invalid_argument("SolverOptions: tolerances must be > 0");
  }
  if (adapt_interval < 1) {
    throw std::invalid_argument("SolverOptions: adapt_interval must be >= 1");
  }
}

RealMatrix project_knowledge(const RealMatrix& m, const Knowledge& kn) {
  require_shape(m, kn, "project_knowledge");
  RealMatrix out = m;
  for (const Constraint& c : kn.constraints()) {
    const double v = clamp_pair(c, m(c.i, c.j), m(c.j, c.i));
    out(c.i, c.j) = v;
    out(c.j, c.i) = v;
  }
  return out;
}

RealMatrix prox_trace_plus_knowledge(const RealMatrix& m, const Knowledge& kn,
                                     double sigma) {
  require_shape(m, kn, "prox_trace_plus_knowledge");
  if (!(sigma > 0.0)) {
    throw std::invalid_argument("prox_trace_plus_knowledge: sigma must be > 0");
  }
  RealMatrix out = m;
  out.diagonal().array() -= 1.0 / sigma;
  for (const Constraint& c : kn.constraints()) {
    if (c.i == c.j) {
      // The trace term only touches the diagonal.
      out(c.i, c.i) = std::clamp(m(c.i, c.i) - 1.0 / sigma, c.lo, c.hi);
    } else {
      const double v = clamp_pair(c, m(c.i, c.j), m(c.j, c.i));
      out(c.i, c.j) = v;
      out(c.j, c.i) = v;
    }
  }
  return out;
}

double rank_conjugate(const RealMatrix& y) {
  const SymEig eig = sym_eig(y);
  double total = 0.0;
  for (Eigen::Index j = 0; j < eig.values.size(); ++j) {
    total += std::max(eig.values(j) - 1.0, 0.0);
  }
  return total;
}

Feasibility feasibility(const RealMatrix& g, const Knowledge& kn,
                        double radius) {
  require_shape(g, kn, "feasibility");
  Feasibility f;
  for (const Constraint& c : kn.constraints()) {
    for (double v : {g(c.i, c.j), g(c.j, c.i)}) {
      if (c.kind == ConstraintKind::kExact) {
        f.exact_violation = std::max(f.exact_violation, std::abs(v - c.lo));
      } else {
        const double out = std::max({c.lo - v, v - c.hi, 0.0});
        f.interval_violation = std::max(f.interval_violation, out);
      }
    }
  }
  const SymEig eig = sym_eig(g);
  if (eig.values.size() > 0) {
    f.min_eigenvalue = eig.values(eig.values.size() - 1);
    const double norm =
        std::max(std::abs(eig.values(0)), std::abs(f.min_eigenvalue));
    f.norm_excess = std::max(norm - radius, 0.0);
  }
  return f;
}

SolveResult solve_trace_min(const SdpProblem& prob, const SolverOptions& opts,
                            const WarmStart* warm) {
  prob.validate();
  opts.validate();
  const auto start = std::chrono::steady_clock::now();
  const int n = prob.size();

  RealMatrix z = RealMatrix::Zero(n, n);
  RealMatrix u = RealMatrix::Zero(n, n);
  if (warm != nullptr) {
    if (warm->primal.rows() != n || warm->primal.cols() != n ||
        warm->dual.rows() != n || warm->dual.cols() != n) {
      throw std::invalid_argument("solve_trace_min: warm start has wrong size");
    }
    z = warm->primal;
    u = warm->dual;
  }

  double rho = opts.rho;
  SolveResult result;
  SolverReport& report = result.report;
  if (opts.record_objective) {
    report.objective_history.reserve(
        static_cast<std::size_t>(std::min(opts.max_iters, 1 << 20)));
  }

  RealMatrix x(n, n);
  RealMatrix x_relaxed(n, n);
  for (int it = 1; it <= opts.max_iters; ++it) {
    x = prox_trace_plus_knowledge(z - u, prob.knowledge, rho);
    x_relaxed = opts.alpha * x + (1.0 - opts.alpha) * z;

    const SymEig eig = sym_eig(x_relaxed + u);
    RealMatrix z_next = clip_spectrum(eig, 0.0, prob.radius);
    u += x_relaxed - z_next;

    report.primal_residual = (x - z_next).norm();
    report.dual_residual = rho * (z_next - z).norm();
    report.iterations = it;
    z = std::move(z_next);

    if (opts.record_objective) report.objective_history.push_back(z.trace());

    if (report.primal_residual <= opts.primal_tol &&
        report.dual_residual <= opts.dual_tol) {
      report.converged = true;
      break;
    }

    if (opts.adaptive_rho && it % opts.adapt_interval == 0) {
      if (report.primal_residual > 10.0 * report.dual_residual) {
        rho *= 2.0;
        u /= 2.0;
      } else if (report.dual_residual > 10.0 * report.primal_residual) {
        rho /= 2.0;
        u *= 2.0;
      }
    }
    if (it % 1000 == 0) {
      log::debug("admm it={} primal={:.3e} dual={:.3e} obj={:.9f}", it,
                 report.primal_residual, report.dual_residual, z.trace());
    }
  }

  report.objective = z.trace();
  report.final_rho = rho;
  report.seconds = std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  if (!report.converged) {
    log::warn("admm stopped after {} iterations (primal={:.3e}, dual={:.3e})",
              report.iterations, report.primal_residual, report.dual_residual);
  }
  result.g_hat = z;
  result.state = {std::move(z), std::move(u)};
  return result;
}

}  // namespace gramscope
