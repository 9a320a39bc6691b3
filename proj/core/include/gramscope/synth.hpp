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

#ifndef GRAMSCOPE_SYNTH_HPP
#define GRAMSCOPE_SYNTH_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "gramscope/herm.hpp"

namespace gramscope {

/// All sampling takes an explicit engine; there is no global random state.
using Rng = std::mt19937_64;

enum class StateKind { kPure, kMixed };
enum class MeasurementKind { kProjective, kPovm };

/// Ground truth of a synthetic experiment: W density matrices and V
/// measurements with K effects each.
struct Ensemble {
  int dim = 0;
  std::vector<ComplexMatrix> states;
  std::vector<std::vector<ComplexMatrix>> povms;

  int num_states() const { return static_cast<int>(states.size()); }
  int num_measurements() const { return static_cast<int>(povms.size()); }
  int outcomes() const {
    return povms.empty() ? 0 : static_cast<int>(povms.front().size());
  }

  /// Throws std::invalid_argument if any state or POVM is not physical
  /// (tolerance 1e-10 on trace, positivity and completeness).
  void validate() const;
};

/// W x (V K) matrix of outcome probabilities or frequencies. Column
/// v * K + k holds outcome k of measurement v.
struct DataTable {
  int states = 0;
  int measurements = 0;
  int outcomes = 0;
  RealMatrix values;
  /// Shots per (state, measurement) pair; empty means exact probabilities.
  std::optional<std::uint64_t> shots;

  double at(int w, int v, int k) const { return values(w, v * outcomes + k); }

  /// Checks entry range and per-block normalization (1e-9 for
  /// probabilities, exact for frequencies).
  void validate() const;
};

struct EnsembleSpec {
  int dim = 2;
  int states = 1;
  int measurements = 1;
  int outcomes = 2;
  StateKind state_kind = StateKind::kPure;
  MeasurementKind measurement_kind = MeasurementKind::kProjective;
  /// Projector ranks for degenerate projective measurements; empty means
  /// non-degenerate (outcomes == dim).
  std::vector<int> degeneracies;

  void validate() const;
};

/// Haar-random unitary from the QR decomposition of a complex Ginibre
/// matrix, with the phases of diag(R) absorbed into Q.
ComplexMatrix haar_unitary(int dim, Rng& rng);

/// |psi><psi| with |psi> Haar distributed.
ComplexMatrix sample_pure_state(int dim, Rng& rng);

/// Hilbert-Schmidt random mixed state A A^dagger / tr(A A^dagger).
ComplexMatrix sample_mixed_state(int dim, Rng& rng);

/// Computational-basis projectors rotated by a Haar unitary. With
/// degeneracies, consecutive basis vectors are grouped into projectors of
/// the given ranks.
std::vector<ComplexMatrix> sample_projective_measurement(
    int dim, Rng& rng, std::span<const int> degeneracies = {});

/// Generic K-outcome POVM: E_k = S^{-1/2} A_k S^{-1/2} with Wishart A_k.
std::vector<ComplexMatrix> sample_povm(int dim, int outcomes, Rng& rng);

ComplexMatrix sample_state(const EnsembleSpec& spec, Rng& rng);
std::vector<ComplexMatrix> sample_measurement(const EnsembleSpec& spec,
                                              Rng& rng);
Ensemble sample_ensemble(const EnsembleSpec& spec, Rng& rng);

/// Born-rule probabilities tr(rho_w E_vk).
DataTable born_table(const Ensemble& ens);

/// Multinomial(shots, probs) counts divided by shots, drawn as a chain of
/// conditional binomials.
std::vector<double> finite_shot_block(std::span<const double> probs,
                                      std::uint64_t shots, Rng& rng);

/// Multinomial frequencies from `shots` repetitions of each
/// (state, measurement) pair, sampled independently per pair.
DataTable finite_shot_table(const Ensemble& ens, std::uint64_t shots,
                            Rng& rng);

}  // namespace gramscope

#endif  // GRAMSCOPE_SYNTH_HPP
