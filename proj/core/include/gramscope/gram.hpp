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

#ifndef GRAMSCOPE_GRAM_HPP
#define GRAMSCOPE_GRAM_HPP

#include <cstdint>
#include <optional>
#include <unordered_set>
#include <vector>

#include "gramscope/herm.hpp"
#include "gramscope/synth.hpp"

namespace gramscope {

/// Vectorized states and effects: P = (P_st | P_m), one column per
/// operator. Effect columns are ordered measurement-major.
struct Realization {
  RealMatrix states;   // d^2 x W
  RealMatrix effects;  // d^2 x (V K)
  int measurements = 0;
  int outcomes = 0;

  int num_states() const { return static_cast<int>(states.cols()); }
  int num_effects() const { return static_cast<int>(effects.cols()); }
  RealMatrix full() const;
};

/// Symmetric N x N matrix with N = W + V K; rows/cols [0, W) are states.
struct GramMatrix {
  RealMatrix values;
  int states = 0;
  int effects = 0;

  int size() const { return static_cast<int>(values.rows()); }
  /// Upper-right W x (V K) block, the data-table position.
  RealMatrix data_block() const {
    return values.topRightCorner(states, effects);
  }
};

enum class ConstraintKind { kExact, kInterval };

/// One known entry (i <= j); binds (j, i) as well. Exact constraints keep
/// lo == hi == value.
struct Constraint {
  int i = 0;
  int j = 0;
  ConstraintKind kind = ConstraintKind::kExact;
  double lo = 0.0;
  double hi = 0.0;

  double value() const { return lo; }
  bool operator==(const Constraint&) const = default;
};

/// The index set Omega with values K.
class Knowledge {
 public:
  Knowledge() = default;
  explicit Knowledge(int n, int data_rows = 0);

  int size() const { return n_; }
  /// Rows [0, data_rows) are states; entries (i < data_rows <= j) form
  /// the data block. Zero when unknown.
  int data_rows() const { return data_rows_; }

  const std::vector<Constraint>& constraints() const { return constraints_; }
  std::size_t count() const { return constraints_.size(); }
  bool contains(int i, int j) const;

  /// Indices are normalized to i <= j. Throws on out-of-range indices,
  /// duplicates, non-finite values or lo > hi.
  void add_exact(int i, int j, double value);
  void add_interval(int i, int j, double lo, double hi);
  void add(const Constraint& c);

  bool is_data_entry(const Constraint& c) const {
    return c.i < data_rows_ && c.j >= data_rows_;
  }

  bool operator==(const Knowledge& other) const {
    return n_ == other.n_ && data_rows_ == other.data_rows_ &&
           constraints_ == other.constraints_;
  }

 private:
  std::int64_t key(int i, int j) const {
    return static_cast<std::int64_t>(i) * n_ + j;
  }

  int n_ = 0;
  int data_rows_ = 0;
  std::vector<Constraint> constraints_;
  std::unordered_set<std::int64_t> index_;
};

enum class RelaxScope { kDataBlock, kAll };

Realization realize(const Ensemble& ens, const HermBasis& basis);

/// G = P^T P.
GramMatrix gram(const Realization& real);

/// Operator-norm radius W + V d bounding every quantum Gram matrix.
double r_qm(int states, int measurements, int dim);

/// Exact data-block entries plus the within-measurement blocks of G_m
/// implied by projective measurements: tr(E_vk E_vq) = delta_kq m_k.
///
/// `degeneracies` is empty (non-degenerate, K == dim), a single list
/// shared by every measurement, or one list per measurement.
Knowledge knowledge_projective(
    const DataTable& table, int dim,
    const std::vector<std::vector<int>>& degeneracies = {});

/// Data-block entries only; no structural knowledge about G_st or G_m.
Knowledge knowledge_data_only(const DataTable& table);

/// Turns exact constraints in `scope` into [value - eps, value + eps].
Knowledge knowledge_relax(const Knowledge& kn, double eps,
                          RelaxScope scope = RelaxScope::kDataBlock);

/// Descending singular values.
RealVector singular_values(const RealMatrix& m);

/// Largest singular value.
double operator_norm(const RealMatrix& m);

/// Count of singular values strictly above rel_tol * s_1.
int numerical_rank(const RealMatrix& m, double rel_tol = 1e-6);

/// || (s_{r+1}, ..., s_N) ||_2.
double rank_tail(const RealMatrix& m, int rank);

/// rank_tail(G, rank) <= tau.
bool rank_certificate(const RealMatrix& g, int rank, double tau = 1e-4);

}  // namespace gramscope

#endif  // GRAMSCOPE_GRAM_HPP
