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

#include "gramscope/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace gramscope {
namespace {

constexpr double kPhysicalTol = 1e-10;

ComplexMatrix ginibre(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(2.0));
  ComplexMatrix g(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

void require_dim(int dim, const char* who) {
  if (dim < 1) {
    throw std::invalid_argument(std::string(who) +
                                ": dimension must be >= 1, got " +
                                std::to_string(dim));
  }
}

double min_eigenvalue(const ComplexMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(
      0.5 * (h + h.adjoint()), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

}  // namespace

void Ensemble::validate() const {
  require_dim(dim, "Ensemble");
  const ComplexMatrix identity = ComplexMatrix::Identity(dim, dim);
  for (std::size_t w = 0; w < states.size(); ++w) {
    const auto& rho = states[w];
    const std::string where = "Ensemble: state " + std::to_string(w);
    if (rho.rows() != dim || rho.cols() != dim) {
      throw std::invalid_argument(where + " has wrong dimension");
    }
    if (hermitian_residual(rho) > kPhysicalTol) {
      throw std::invalid_argument(where + " is not Hermitian");
    }
    if (std::abs(rho.trace().real() - 1.0) > kPhysicalTol) {
      throw std::invalid_argument(where + " does not have unit trace");
    }
    if (min_eigenvalue(rho) < -kPhysicalTol) {
      throw std::invalid_argument(where + " is not positive semidefinite");
    }
  }
  for (std::size_t v = 0; v < povms.size(); ++v) {
    const auto& povm = povms[v];
    const std::string where = "Ensemble: measurement " + std::to_string(v);
    if (povm.empty() || povm.size() != povms.front().size()) {
      throw std::invalid_argument(where + " has inconsistent outcome count");
    }
    ComplexMatrix total = ComplexMatrix::Zero(dim, dim);
    for (const auto& effect : povm) {
      if (effect.rows() != dim || effect.cols() != dim) {
        throw std::invalid_argument(where + " has an effect of wrong size");
      }
      if (hermitian_residual(effect) > kPhysicalTol ||
          min_eigenvalue(effect) < -kPhysicalTol) {
        throw std::invalid_argument(where + " has a non-positive effect");
      }
      total += effect;
    }
    if ((total - identity).cwiseAbs().maxCoeff() > kPhysicalTol) {
      throw std::invalid_argument(where + " does not sum to the identity");
    }
  }
}

void DataTable::validate() const {
  if (values.rows() != states || values.cols() != measurements * outcomes) {
    throw std::invalid_argument("DataTable: shape does not match metadata");
  }
  for (int w = 0; w < states; ++w) {
    for (int v = 0; v < measurements; ++v) {
      double sum = 0.0;
      std::uint64_t counts = 0;
      for (int k = 0; k < outcomes; ++k) {
        const double f = at(w, v, k);
        if (!std::isfinite(f) || f < -1e-12 || f > 1.0 + 1e-12) {
          throw std::invalid_argument("DataTable: entry out of [0, 1] at (" +
                                      std::to_string(w) + ", " +
                                      std::to_string(v) + ", " +
                                      std::to_string(k) + ")");
        }
        sum += f;
        if (shots) {
          counts += static_cast<std::uint64_t>(
              std::llround(f * static_cast<double>(*shots)));
        }
      }
      const bool normalized =
          shots ? counts == *shots : std::abs(sum - 1.0) <= 1e-9;
      if (!normalized) {
        throw std::invalid_argument("DataTable: block (" + std::to_string(w) +
                                    ", " + std::to_string(v) +
                                    ") is not normalized");
      }
    }
  }
}

void EnsembleSpec::validate() const {
  require_dim(dim, "EnsembleSpec");
  if (states < 1 || measurements < 1 || outcomes < 1) {
    throw std::invalid_argument(
        "EnsembleSpec: states, measurements and outcomes must be >= 1");
  }
  if (measurement_kind == MeasurementKind::kProjective) {
    if (degeneracies.empty()) {
      if (outcomes != dim) {
        throw std::invalid_argument(
            "EnsembleSpec: non-degenerate projective measurements need "
            "outcomes == dim (got K=" +
            std::to_string(outcomes) + ", d=" + std::to_string(dim) + ")");
      }
    } else {
      if (static_cast<int>(degeneracies.size()) != outcomes) {
        throw std::invalid_argument(
            "EnsembleSpec: one degeneracy per outcome required");
      }
      for (int m : degeneracies) {
        if (m < 1) {
          throw std::invalid_argument("EnsembleSpec: degeneracy must be >= 1");
        }
      }
      if (std::accumulate(degeneracies.begin(), degeneracies.end(), 0) !=
          dim) {
        throw std::invalid_argument(
            "EnsembleSpec: degeneracies must sum to dim");
      }
    }
  } else if (!degeneracies.empty()) {
    throw std::invalid_argument(
        "EnsembleSpec: degeneracies only apply to projective measurements");
  }
}

ComplexMatrix haar_unitary(int dim, Rng& rng) {
  require_dim(dim, "haar_unitary");
  const ComplexMatrix z = ginibre(dim, dim, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j) {
    const double mag = std::abs(r(j, j));
    const Complex phase = mag > 0.0 ? r(j, j) / mag : Complex(1.0, 0.0);
    q.col(j) *= phase;
  }
  return q;
}

ComplexMatrix sample_pure_state(int dim, Rng& rng) {
  require_dim(dim, "sample_pure_state");
  Eigen::VectorXcd psi = ginibre(dim, 1, rng).col(0);
  psi /= psi.norm();
  ComplexMatrix rho = psi * psi.adjoint();
  return 0.5 * (rho + rho.adjoint());
}

ComplexMatrix sample_mixed_state(int dim, Rng& rng) {
  require_dim(dim, "sample_mixed_state");
  const ComplexMatrix a = ginibre(dim, dim, rng);
  ComplexMatrix rho = a * a.adjoint();
  rho /= rho.trace().real();
  return 0.5 * (rho + rho.adjoint());
}

std::vector<ComplexMatrix> sample_projective_measurement(
    int dim, Rng& rng, std::span<const int> degeneracies) {
  require_dim(dim, "sample_projective_measurement");
  std::vector<int> ranks(degeneracies.begin(), degeneracies.end());
  if (ranks.empty()) ranks.assign(static_cast<std::size_t>(dim), 1);
  if (std::accumulate(ranks.begin(), ranks.end(), 0) != dim) {
    throw std::invalid_argument(
        "sample_projective_measurement: degeneracies must sum to dim");
  }

  const ComplexMatrix u = haar_unitary(dim, rng);
  std::vector<ComplexMatrix> effects;
  effects.reserve(ranks.size());
  int col = 0;
  for (int rank : ranks) {
    const auto block = u.middleCols(col, rank);
    ComplexMatrix proj = block * block.adjoint();
    effects.push_back(0.5 * (proj + proj.adjoint()));
    col += rank;
  }
  return effects;
}

std::vector<ComplexMatrix> sample_povm(int dim, int outcomes, Rng& rng) {
  require_dim(dim, "sample_povm");
  if (outcomes < 1) {
    throw std::invalid_argument("sample_povm: outcomes must be >= 1");
  }
  std::vector<ComplexMatrix> raw;
  raw.reserve(static_cast<std::size_t>(outcomes));
  ComplexMatrix total = ComplexMatrix::Zero(dim, dim);
  for (int k = 0; k < outcomes; ++k) {
    const ComplexMatrix a = ginibre(dim, dim, rng);
    raw.push_back(a * a.adjoint());
    total += raw.back();
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(total);
  const ComplexMatrix inv_sqrt = solver.operatorInverseSqrt();

  std::vector<ComplexMatrix> effects;
  effects.reserve(raw.size());
  ComplexMatrix sum = ComplexMatrix::Zero(dim, dim);
  for (std::size_t k = 0; k + 1 < raw.size(); ++k) {
    ComplexMatrix e = inv_sqrt * raw[k] * inv_sqrt;
    e = 0.5 * (e + e.adjoint());
    sum += e;
    effects.push_back(std::move(e));
  }
  // Close the last effect exactly so completeness holds to roundoff.
  ComplexMatrix last = ComplexMatrix::Identity(dim, dim) - sum;
  effects.push_back(0.5 * (last + last.adjoint()));
  return effects;
}

ComplexMatrix sample_state(const EnsembleSpec& spec, Rng& rng) {
  return spec.state_kind == StateKind::kPure
             ? sample_pure_state(spec.dim, rng)
             : sample_mixed_state(spec.dim, rng);
}

std::vector<ComplexMatrix> sample_measurement(const EnsembleSpec& spec,
                                              Rng& rng) {
  if (spec.measurement_kind == MeasurementKind::kPovm) {
    return sample_povm(spec.dim, spec.outcomes, rng);
  }
  return sample_projective_measurement(spec.dim, rng, spec.degeneracies);
}

Ensemble sample_ensemble(const EnsembleSpec& spec, Rng& rng) {
  spec.validate();
  Ensemble ens;
  ens.dim = spec.dim;
  ens.states.reserve(static_cast<std::size_t>(spec.states));
  for (int w = 0; w < spec.states; ++w) {
    ens.states.push_back(sample_state(spec, rng));
  }
  ens.povms.reserve(static_cast<std::size_t>(spec.measurements));
  for (int v = 0; v < spec.measurements; ++v) {
    ens.povms.push_back(sample_measurement(spec, rng));
  }
  return ens;
}

DataTable born_table(const Ensemble& ens) {
  const int k_out = ens.outcomes();
  DataTable table;
  table.states = ens.num_states();
  table.measurements = ens.num_measurements();
  table.outcomes = k_out;
  table.values.resize(table.states, table.measurements * k_out);
  for (int v = 0; v < table.measurements; ++v) {
    if (static_cast<int>(ens.povms[v].size()) != k_out) {
      throw std::invalid_argument("born_table: ragged outcome counts");
    }
    for (int k = 0; k < k_out; ++k) {
      const auto& effect = ens.povms[v][k];
      for (int w = 0; w < table.states; ++w) {
        const auto& rho = ens.states[w];
        if (rho.rows() != effect.rows() || rho.cols() != effect.cols()) {
          throw std::invalid_argument(
              "born_table: state and effect dimensions differ");
        }
        // tr(rho E) = sum_ij rho_ij E_ji
        table.values(w, v * k_out + k) =
            (rho.cwiseProduct(effect.transpose())).sum().real();
      }
    }
  }
  return table;
}

std::vector<double> finite_shot_block(std::span<const double> probs,
                                      std::uint64_t shots, Rng& rng) {
  if (shots == 0) {
    throw std::invalid_argument("finite_shot_block: shots must be >= 1");
  }
  const double n = static_cast<double>(shots);
  std::vector<double> freq(probs.size(), 0.0);
  std::uint64_t remaining = shots;
  double mass = 1.0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    const double p = std::max(0.0, probs[k]);
    std::uint64_t count = 0;
    if (k + 1 == probs.size()) {
      count = remaining;
    } else if (remaining > 0 && mass > 0.0) {
      const double cond = std::clamp(p / mass, 0.0, 1.0);
      std::binomial_distribution<std::uint64_t> binom(remaining, cond);
      count = binom(rng);
    }
    freq[k] = static_cast<double>(count) / n;
    remaining -= count;
    mass -= p;
  }
  return freq;
}

DataTable finite_shot_table(const Ensemble& ens, std::uint64_t shots,
                            Rng& rng) {
  if (shots == 0) {
    throw std::invalid_argument("finite_shot_table: shots must be >= 1");
  }
  DataTable table = born_table(ens);
  table.shots = shots;
  const int k_out = table.outcomes;
  std::vector<double> probs(static_cast<std::size_t>(k_out));
  for (int w = 0; w < table.states; ++w) {
    for (int v = 0; v < table.measurements; ++v) {
      for (int k = 0; k < k_out; ++k) probs[k] = table.at(w, v, k);
      const auto freq = finite_shot_block(probs, shots, rng);
      for (int k = 0; k < k_out; ++k) {
        table.values(w, v * k_out + k) = freq[k];
      }
    }
  }
  return table;
}

}  // namespace gramscope
