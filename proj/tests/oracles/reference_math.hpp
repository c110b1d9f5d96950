// Copyright 2026 The purify Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Independent closed forms and slow reference routines used as test oracles.

#include <algorithm>
#include <cstdlib>
#include <complex>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

namespace purify::oracle {

// Permanent by the explicit permutation sum.
inline std::complex<double> permutation_sum(const Eigen::MatrixXcd& a) {
  const auto n = static_cast<int>(a.rows());
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  std::complex<double> total = 0.0;
  do {
    std::complex<double> term = 1.0;
    for (int i = 0; i < n; ++i) term *= a(i, p[i]);
    total += term;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

// Multipermanent as sum over tau of prod_k S(tau_k, k) * perm(B o conj(B_tau)),
// where B_tau has its columns permuted by tau.
inline double multipermanent_by_tau(const Eigen::MatrixXcd& b, const Eigen::MatrixXcd& s) {
  const auto n = static_cast<int>(b.rows());
  std::vector<int> tau(static_cast<std::size_t>(n));
  std::iota(tau.begin(), tau.end(), 0);
  std::complex<double> total = 0.0;
  do {
    std::complex<double> w = 1.0;
    for (int k = 0; k < n; ++k) w *= s(tau[k], k);
    if (w == 0.0) continue;
    Eigen::MatrixXcd m(n, n);
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < n; ++k) m(i, k) = b(i, k) * std::conj(b(i, tau[k]));
    }
    total += w * permutation_sum(m);
  } while (std::next_permutation(tau.begin(), tau.end()));
  return total.real();
}

// Exact averaged overlap moments for Wiener-phase dephasing, x = 2 gamma_d / gamma.
inline double wiener_pair(double x) { return 1.0 / (1.0 + x); }
inline double wiener_triple(double x) { return 2.0 / ((x + 1.0) * (x + 2.0)); }
inline double wiener_quad(double x) {
  return (5.0 * x + 6.0) / ((x + 1.0) * (x + 1.0) * (x + 2.0) * (x + 3.0));
}

inline Eigen::MatrixXcd random_unitary(int n, unsigned seed) {
  std::srand(seed);
  const Eigen::MatrixXcd z = Eigen::MatrixXcd::Random(n, n);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  return qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
}

// Gram matrix of n random unit vectors in dimension d.
inline Eigen::MatrixXcd random_gram(int n, int d, unsigned seed) {
  std::srand(seed);
  Eigen::MatrixXcd v = Eigen::MatrixXcd::Random(d, n);
  for (int k = 0; k < n; ++k) v.col(k).normalize();
  Eigen::MatrixXcd g = v.adjoint() * v;
  for (int k = 0; k < n; ++k) g(k, k) = 1.0;
  return g;
}

}  // namespace purify::oracle
