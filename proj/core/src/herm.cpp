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

#include "gramscope/herm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gramscope {

HermBasis::HermBasis(int dim) : dim_(dim) {
  if (dim < 1) {
    throw std::invalid_argument("herm_basis: dimension must be >= 1, got " +
                                std::to_string(dim));
  }
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  elements_.reserve(static_cast<std::size_t>(dim) * dim);

  elements_.push_back(ComplexMatrix::Identity(dim, dim) /
                      std::sqrt(static_cast<double>(dim)));

  for (int j = 0; j < dim; ++j) {
    for (int k = j + 1; k < dim; ++k) {
      ComplexMatrix sym = ComplexMatrix::Zero(dim, dim);
      sym(j, k) = inv_sqrt2;
      sym(k, j) = inv_sqrt2;
      elements_.push_back(std::move(sym));

      ComplexMatrix anti = ComplexMatrix::Zero(dim, dim);
      anti(j, k) = Complex(0.0, -inv_sqrt2);
      anti(k, j) = Complex(0.0, inv_sqrt2);
      elements_.push_back(std::move(anti));
    }
  }

  // diag(1, ..., 1, -l, 0, ...) / sqrt(l (l + 1)) for l = 1 .. d-1
  for (int l = 1; l < dim; ++l) {
    ComplexMatrix diag = ComplexMatrix::Zero(dim, dim);
    const double norm = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
    for (int m = 0; m < l; ++m) diag(m, m) = norm;
    diag(l, l) = -l * norm;
    elements_.push_back(std::move(diag));
  }
}

HermBasis herm_basis(int dim) { return HermBasis(dim); }

double hermitian_residual(const ComplexMatrix& h) {
  if (h.size() == 0) return 0.0;
  return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

RealVector vectorize(const ComplexMatrix& h, const HermBasis& basis) {
  if (h.rows() != basis.dim() || h.cols() != basis.dim()) {
    throw std::invalid_argument("vectorize: matrix is " +
                                std::to_string(h.rows()) + "x" +
                                std::to_string(h.cols()) + ", basis dim " +
                                std::to_string(basis.dim()));
  }
  if (hermitian_residual(h) > 1e-8) {
    throw std::invalid_argument("vectorize: input is not Hermitian");
  }
  RealVector v(basis.size());
  for (int a = 0; a < basis.size(); ++a) {
    // tr(B_a H) = sum_ij conj(B_a)_ij H_ij for Hermitian B_a
    v(a) = (basis[a].conjugate().cwiseProduct(h)).sum().real();
  }
  return v;
}

ComplexMatrix unvectorize(const RealVector& v, const HermBasis& basis) {
  if (v.size() != basis.size()) {
    throw std::invalid_argument("unvectorize: vector length mismatch");
  }
  ComplexMatrix h = ComplexMatrix::Zero(basis.dim(), basis.dim());
  for (int a = 0; a < basis.size(); ++a) h += v(a) * basis[a];
  return h;
}

SymEig sym_eig(const RealMatrix& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("sym_eig: matrix must be square");
  }
  const Eigen::Index n = m.rows();
  if (n == 0) return {RealVector(0), RealMatrix(0, 0)};

  const RealMatrix sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("sym_eig: eigensolver did not converge");
  }
  // Eigen returns ascending order.
  SymEig out;
  out.values = solver.eigenvalues().reverse();
  out.vectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

RealMatrix clip_spectrum(const SymEig& eig, double lo, double hi) {
  if (lo > hi) {
    throw std::invalid_argument("clip_spectrum: lo > hi");
  }
  const RealVector clipped = eig.values.cwiseMax(lo).cwiseMin(hi);
  const Eigen::Index n = eig.values.size();

  // Only eigenpairs with a nonzero clipped value contribute.
  std::vector<Eigen::Index> keep;
  keep.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j) {
    if (clipped(j) != 0.0) keep.push_back(j);
  }
  if (keep.empty()) return RealMatrix::Zero(n, n);

  const auto cols = static_cast<Eigen::Index>(keep.size());
  RealMatrix basis(n, cols);
  RealVector weights(cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    basis.col(c) = eig.vectors.col(keep[c]);
    weights(c) = clipped(keep[c]);
  }
  RealMatrix out = (basis * weights.asDiagonal()) * basis.transpose();
  return 0.5 * (out + out.transpose());
}

RealMatrix clip_spectrum(const RealMatrix& m, double lo, double hi) {
  if (lo > hi) {
    throw std::invalid_argument("clip_spectrum: lo > hi");
  }
  return clip_spectrum(sym_eig(m), lo, hi);
}

}  // namespace gramscope
