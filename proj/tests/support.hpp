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

// Reference computations used as oracles. Nothing here calls into the
// library's linear algebra; traces are summed entry by entry.

#ifndef GRAMSCOPE_TESTS_SUPPORT_HPP
#define GRAMSCOPE_TESTS_SUPPORT_HPP

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "gramscope/herm.hpp"
#include "gramscope/synth.hpp"

namespace testing {

using gramscope::ComplexMatrix;
using gramscope::RealMatrix;
using gramscope::RealVector;

inline double trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  std::complex<double> t = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index k = 0; k < a.cols(); ++k) t += a(i, k) * b(k, i);
  return t.real();
}

// Operators in Gram order: states, then effects measurement-major.
inline std::vector<ComplexMatrix> operators(const gramscope::Ensemble& ens) {
  std::vector<ComplexMatrix> ops(ens.states.begin(), ens.states.end());
  for (const auto& povm : ens.povms)
    for (const auto& e : povm) ops.push_back(e);
  return ops;
}

inline RealMatrix gram_direct(const gramscope::Ensemble& ens) {
  auto ops = operators(ens);
  const auto n = static_cast<Eigen::Index>(ops.size());
  RealMatrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = trace_product(ops[i], ops[j]);
  return g;
}

inline RealMatrix born_direct(const gramscope::Ensemble& ens) {
  const int w = ens.num_states(), v = ens.num_measurements(), k = ens.outcomes();
  RealMatrix d(w, v * k);
  for (int a = 0; a < w; ++a)
    for (int b = 0; b < v; ++b)
      for (int c = 0; c < k; ++c)
        d(a, b * k + c) = trace_product(ens.states[a], ens.povms[b][c]);
  return d;
}

// Eigenvalues through the non-symmetric solver, sorted descending.
inline RealVector eigenvalues_oracle(const RealMatrix& m) {
  Eigen::EigenSolver<RealMatrix> es(m, false);
  RealVector v = es.eigenvalues().real();
  std::sort(v.data(), v.data() + v.size(), std::greater<>());
  return v;
}

inline double max_abs(const RealMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline RealMatrix random_symmetric(int n, std::mt19937_64& rng,
                                   double scale = 1.0) {
  std::normal_distribution<double> nd(0.0, scale);
  RealMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = nd(rng);
  return (0.5 * (a + a.transpose())).eval();
}

inline RealMatrix random_orthogonal(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  RealMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = nd(rng);
  Eigen::HouseholderQR<RealMatrix> qr(a);
  return qr.householderQ() * RealMatrix::Identity(n, n);
}

inline ComplexMatrix random_hermitian(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  ComplexMatrix a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = {nd(rng), nd(rng)};
  return (0.5 * (a + a.adjoint())).eval();
}

inline std::filesystem::path scratch_dir(const std::string& name) {
  const char* base = std::getenv("GRAMSCOPE_TEST_TMP");
  auto root = base ? std::filesystem::path(base)
                   : std::filesystem::temp_directory_path() / "gramscope_tests";
  auto dir = root / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace testing

#endif  // GRAMSCOPE_TESTS_SUPPORT_HPP
