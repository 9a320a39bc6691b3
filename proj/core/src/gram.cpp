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

#include "gramscope/gram.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

namespace gramscope {

RealMatrix Realization::full() const {
  RealMatrix p(states.rows(), states.cols() + effects.cols());
  p << states, effects;
  return p;
}

Knowledge::Knowledge(int n, int data_rows) : n_(n), data_rows_(data_rows) {
  if (n < 0 || data_rows < 0 || data_rows > n) {
    throw std::invalid_argument("Knowledge: invalid size or data_rows");
  }
}

bool Knowledge::contains(int i, int j) const {
  if (i > j) std::swap(i, j);
  return index_.count(key(i, j)) != 0;
}

void Knowledge::add(const Constraint& c) {
  Constraint norm = c;
  if (norm.i > norm.j) std::swap(norm.i, norm.j);
  if (norm.i < 0 || norm.j >= n_) {
    throw std::invalid_argument("Knowledge: index (" + std::to_string(c.i) +
                                ", " + std::to_string(c.j) +
                                ") out of range for N=" + std::to_string(n_));
  }
  if (!std::isfinite(norm.lo) || !std::isfinite(norm.hi)) {
    throw std::invalid_argument("Knowledge: non-finite constraint value");
  }
  if (norm.kind == ConstraintKind::kExact && norm.lo != norm.hi) {
    throw std::invalid_argument("Knowledge: exact constraint with lo != hi");
  }
  if (norm.lo > norm.hi) {
    throw std::invalid_argument("Knowledge: interval with lo > hi");
  }
  if (!index_.insert(key(norm.i, norm.j)).second) {
    throw std::invalid_argument("Knowledge: duplicate constraint at (" +
                                std::to_string(norm.i) + ", " +
                                std::to_string(norm.j) + ")");
  }
  constraints_.push_back(norm);
}

void Knowledge::add_exact(int i, int j, double value) {
  add({i, j, ConstraintKind::kExact, value, value});
}

void Knowledge::add_interval(int i, int j, double lo, double hi) {
  add({i, j, ConstraintKind::kInterval, lo, hi});
}

Realization realize(const Ensemble& ens, const HermBasis& basis) {
  if (ens.dim != basis.dim()) {
    throw std::invalid_argument("realize: ensemble dim " +
                                std::to_string(ens.dim) + " vs basis dim " +
                                std::to_string(basis.dim()));
  }
  const int k_out = ens.outcomes();
  Realization real;
  real.measurements = ens.num_measurements();
  real.outcomes = k_out;
  real.states.resize(basis.size(), ens.num_states());
  real.effects.resize(basis.size(), real.measurements * k_out);
  for (int w = 0; w < ens.num_states(); ++w) {
    real.states.col(w) = vectorize(ens.states[w], basis);
  }
  for (int v = 0; v < real.measurements; ++v) {
    if (static_cast<int>(ens.povms[v].size()) != k_out) {
      throw std::invalid_argument("realize: ragged outcome counts");
    }
    for (int k = 0; k < k_out; ++k) {
      real.effects.col(v * k_out + k) = vectorize(ens.povms[v][k], basis);
    }
  }
  return real;
}

GramMatrix gram(const Realization& real) {
  const RealMatrix p = real.full();
  GramMatrix g;
  g.values = p.transpose() * p;
  g.values = (0.5 * (g.values + g.values.transpose())).eval();
  g.states = real.num_states();
  g.effects = real.num_effects();
  return g;
}

double r_qm(int states, int measurements, int dim) {
  if (states < 1 || measurements < 1 || dim < 1) {
    throw std::invalid_argument("r_qm: W, V and d must be >= 1");
  }
  return static_cast<double>(states) +
         static_cast<double>(measurements) * dim;
}

Knowledge knowledge_projective(
    const DataTable& table, int dim,
    const std::vector<std::vector<int>>& degeneracies) {
  const int w_count = table.states;
  const int v_count = table.measurements;
  const int k_out = table.outcomes;
  if (dim < 1) {
    throw std::invalid_argument("knowledge_projective: dim must be >= 1");
  }
  if (!degeneracies.empty() && degeneracies.size() != 1 &&
      static_cast<int>(degeneracies.size()) != v_count) {
    throw std::invalid_argument(
        "knowledge_projective: need one shared degeneracy list or one per "
        "measurement");
  }
  for (const auto& list : degeneracies) {
    if (static_cast<int>(list.size()) != k_out) {
      throw std::invalid_argument(
          "knowledge_projective: degeneracy list length must equal K");
    }
    for (int m : list) {
      if (m < 1) {
        throw std::invalid_argument(
            "knowledge_projective: multiplicities must be >= 1");
      }
    }
    if (std::accumulate(list.begin(), list.end(), 0) != dim) {
      throw std::invalid_argument(
          "knowledge_projective: multiplicities must sum to d");
    }
  }
  if (degeneracies.empty() && k_out != dim) {
    throw std::invalid_argument(
        "knowledge_projective: non-degenerate measurements need K == d");
  }

  const int n = w_count + v_count * k_out;
  Knowledge kn(n, w_count);
  for (int w = 0; w < w_count; ++w) {
    for (int c = 0; c < v_count * k_out; ++c) {
      kn.add_exact(w, w_count + c, table.values(w, c));
    }
  }
  for (int v = 0; v < v_count; ++v) {
    const std::vector<int>* mult = nullptr;
    if (!degeneracies.empty()) {
      mult = degeneracies.size() == 1 ? &degeneracies[0] : &degeneracies[v];
    }
    const int base = w_count + v * k_out;
    for (int k = 0; k < k_out; ++k) {
      for (int q = k; q < k_out; ++q) {
        double value = 0.0;
        if (k == q) value = mult ? (*mult)[k] : 1.0;
        kn.add_exact(base + k, base + q, value);
      }
    }
  }
  return kn;
}

Knowledge knowledge_data_only(const DataTable& table) {
  const int w_count = table.states;
  const int cols = table.measurements * table.outcomes;
  Knowledge kn(w_count + cols, w_count);
  for (int w = 0; w < w_count; ++w) {
    for (int c = 0; c < cols; ++c) {
      kn.add_exact(w, w_count + c, table.values(w, c));
    }
  }
  return kn;
}

Knowledge knowledge_relax(const Knowledge& kn, double eps, RelaxScope scope) {
  if (!(eps >= 0.0) || !std::isfinite(eps)) {
    throw std::invalid_argument("knowledge_relax: eps must be finite and >= 0");
  }
  if (eps == 0.0) return kn;
  Knowledge out(kn.size(), kn.data_rows());
  for (Constraint c : kn.constraints()) {
    const bool selected = scope == RelaxScope::kAll || kn.is_data_entry(c);
    if (selected && c.kind == ConstraintKind::kExact) {
      c.kind = ConstraintKind::kInterval;
      c.lo -= eps;
      c.hi += eps;
    }
    out.add(c);
  }
  return out;
}

RealVector singular_values(const RealMatrix& m) {
  if (m.size() == 0) return RealVector(0);
  Eigen::BDCSVD<RealMatrix> svd(m);
  return svd.singularValues();
}

double operator_norm(const RealMatrix& m) {
  const RealVector s = singular_values(m);
  return s.size() == 0 ? 0.0 : s(0);
}

int numerical_rank(const RealMatrix& m, double rel_tol) {
  if (!(rel_tol > 0.0)) {
    throw std::invalid_argument("numerical_rank: rel_tol must be > 0");
  }
  const RealVector s = singular_values(m);
  if (s.size() == 0 || s(0) == 0.0) return 0;
  const double cutoff = rel_tol * s(0);
  int rank = 0;
  for (Eigen::Index j = 0; j < s.size(); ++j) {
    if (s(j) > cutoff) ++rank;
  }
  return rank;
}

double rank_tail(const RealMatrix& m, int rank) {
  const RealVector s = singular_values(m);
  if (rank < 0 || rank > s.size()) {
    throw std::invalid_argument("rank_tail: rank out of range");
  }
  return s.tail(s.size() - rank).norm();
}

bool rank_certificate(const RealMatrix& g, int rank, double tau) {
  if (!(tau > 0.0)) {
    throw std::invalid_argument("rank_certificate: tau must be > 0");
  }
  return rank_tail(g, rank) <= tau;
}

}  // namespace gramscope
