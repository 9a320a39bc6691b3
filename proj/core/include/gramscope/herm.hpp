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

#ifndef GRAMSCOPE_HERM_HPP
#define GRAMSCOPE_HERM_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace gramscope {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Orthonormal basis of the real vector space Herm(C^d) under the
/// Hilbert-Schmidt inner product tr(A B).
///
/// Elements are ordered I/sqrt(d) first, then the symmetric and
/// antisymmetric off-diagonal Gell-Mann matrices for each pair j < k,
/// then the d-1 diagonal ones.
class HermBasis {
 public:
  explicit HermBasis(int dim);

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(elements_.size()); }
  const ComplexMatrix& operator[](int a) const { return elements_[a]; }
  const std::vector<ComplexMatrix>& elements() const { return elements_; }

 private:
  int dim_;
  std::vector<ComplexMatrix> elements_;
};

HermBasis herm_basis(int dim);

/// Largest |H - H^dagger| entry.
double hermitian_residual(const ComplexMatrix& h);

/// Component a is tr(B_a H). Throws std::invalid_argument for a
/// dimension mismatch or a non-Hermitian input (residual > 1e-8).
RealVector vectorize(const ComplexMatrix& h, const HermBasis& basis);

/// Inverse of vectorize: sum_a v_a B_a.
ComplexMatrix unvectorize(const RealVector& v, const HermBasis& basis);

struct SymEig {
  RealVector values;   // descending
  RealMatrix vectors;  // columns match values
};

/// Symmetric eigendecomposition of (M + M^T)/2 with eigenvalues sorted in
/// descending order.
SymEig sym_eig(const RealMatrix& m);

/// Frobenius-nearest matrix to M with spectrum in [lo, hi].
RealMatrix clip_spectrum(const RealMatrix& m, double lo, double hi);

/// Same as clip_spectrum, reusing a decomposition the caller already has.
RealMatrix clip_spectrum(const SymEig& eig, double lo, double hi);

}  // namespace gramscope

#endif  // GRAMSCOPE_HERM_HPP
