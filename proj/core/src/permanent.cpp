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

#include "purify/permanent.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

namespace purify {
namespace {

constexpr double kImagTolerance = 1e-10;
constexpr double kProbabilityTolerance = 1e-9;

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

Complex permanent_naive(const ComplexMatrix& a) {
  const auto n = static_cast<int>(a.rows());
  std::vector<int> sigma(static_cast<std::size_t>(n));
  std::iota(sigma.begin(), sigma.end(), 0);
  Complex total = 0.0;
  do {
    Complex term = 1.0;
    for (int i = 0; i < n; ++i) term *= a(i, sigma[i]);
    total += term;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return total;
}

// Glynn's formula, perm(A) = 2^{1-n} sum_delta (prod delta) prod_j sum_i delta_i a_ij,
// with delta_0 fixed to +1 and the rest walked in Gray-code order.
Complex permanent_glynn(const ComplexMatrix& a) {
  const auto n = static_cast<int>(a.rows());
  std::vector<Complex> col_sums(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) col_sums[j] = a.col(j).sum();
  std::vector<int> delta(static_cast<std::size_t>(n), 1);
  int sign = 1;
  Complex total = 0.0;
  const std::uint64_t steps = std::uint64_t{1} << (n - 1);
  for (std::uint64_t k = 0;; ++k) {
    Complex prod = 1.0;
    for (int j = 0; j < n; ++j) prod *= col_sums[j];
    total += static_cast<double>(sign) * prod;
    if (k + 1 == steps) break;
    // Flip the row given by the lowest set bit of k + 1 (rows 1..n-1).
    const int row = std::countr_zero(k + 1) + 1;
    delta[row] = -delta[row];
    sign = -sign;
    const double twice = 2.0 * delta[row];
    for (int j = 0; j < n; ++j) col_sums[j] += twice * a(row, j);
  }
  return total / static_cast<double>(steps);
}

Complex multipermanent_naive(const ComplexMatrix& b, const ComplexMatrix& s) {
  const auto n = static_cast<int>(b.rows());
  std::vector<int> sigma(static_cast<std::size_t>(n));
  std::iota(sigma.begin(), sigma.end(), 0);
  Complex total = 0.0;
  do {
    std::vector<int> rho(static_cast<std::size_t>(n));
    std::iota(rho.begin(), rho.end(), 0);
    do {
      Complex term = 1.0;
      for (int i = 0; i < n; ++i) {
        term *= b(i, sigma[i]) * std::conj(b(i, rho[i])) * s(rho[i], sigma[i]);
      }
      total += term;
    } while (std::next_permutation(rho.begin(), rho.end()));
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return total;
}

// Glynn's identity applied independently to sigma (signs delta over photons)
// and rho (signs eps over photons). For output slot i the inner sum is
//   sum_{a,b} delta_a eps_b B(i,a) conj(B(i,b)) S(b,a) = sum_b eps_b conj(B(i,b)) u(i,b)
// with u = (B diag(delta)) S^T, updated in O(n^2) per delta flip.
Complex multipermanent_glynn(const ComplexMatrix& b, const ComplexMatrix& s) {
  const auto n = static_cast<int>(b.rows());
  const ComplexMatrix b_conj = b.conjugate();
  ComplexMatrix u = b * s.transpose();
  std::vector<Complex> row_vals(static_cast<std::size_t>(n));
  const std::uint64_t steps = std::uint64_t{1} << (n - 1);

  std::vector<int> delta(static_cast<std::size_t>(n), 1);
  int delta_sign = 1;
  Complex total = 0.0;
  for (std::uint64_t kd = 0;; ++kd) {
    for (int i = 0; i < n; ++i) row_vals[i] = b.row(i).dot(u.row(i));
    std::vector<int> eps(static_cast<std::size_t>(n), 1);
    int eps_sign = 1;
    Complex inner = 0.0;
    for (std::uint64_t ke = 0;; ++ke) {
      Complex prod = 1.0;
      for (int i = 0; i < n; ++i) prod *= row_vals[i];
      inner += static_cast<double>(eps_sign) * prod;
      if (ke + 1 == steps) break;
      const int photon = std::countr_zero(ke + 1) + 1;
      eps[photon] = -eps[photon];
      eps_sign = -eps_sign;
      const double twice = 2.0 * eps[photon];
      for (int i = 0; i < n; ++i) row_vals[i] += twice * b_conj(i, photon) * u(i, photon);
    }
    total += static_cast<double>(delta_sign) * inner;
    if (kd + 1 == steps) break;
    const int photon = std::countr_zero(kd + 1) + 1;
    delta[photon] = -delta[photon];
    delta_sign = -delta_sign;
    const double twice = 2.0 * delta[photon];
    // u(i, c) += 2 delta_g B(i, g) S(c, g)
    u.noalias() += twice * b.col(photon) * s.col(photon).transpose();
  }
  const double scale = static_cast<double>(steps) * static_cast<double>(steps);
  return total / scale;
}

}  // namespace

DistinguishabilityMatrix::DistinguishabilityMatrix(ComplexMatrix entries)
    : entries_(std::move(entries)) {
  const auto n = entries_.rows();
  if (n != entries_.cols()) throw InvalidArgument("DistinguishabilityMatrix: not square");
  for (Eigen::Index j = 0; j < n; ++j) {
    if (std::abs(entries_(j, j) - 1.0) > kEntryTolerance) {
      throw InvalidArgument("DistinguishabilityMatrix: diagonal entry " + std::to_string(j) +
                            " is not 1");
    }
    for (Eigen::Index k = 0; k < n; ++k) {
      if (std::abs(entries_(j, k) - std::conj(entries_(k, j))) > kEntryTolerance) {
        throw InvalidArgument("DistinguishabilityMatrix: not Hermitian");
      }
      if (std::abs(entries_(j, k)) > 1.0 + kEntryTolerance) {
        throw InvalidArgument("DistinguishabilityMatrix: overlap magnitude above 1");
      }
    }
  }
  if (n > 0) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(entries_, Eigen::EigenvaluesOnly);
    const double smallest = solver.eigenvalues().minCoeff();
    if (smallest < -kPsdTolerance) {
      throw InvalidArgument("DistinguishabilityMatrix: not positive semidefinite (eigenvalue " +
                            std::to_string(smallest) + ")");
    }
  }
}

DistinguishabilityMatrix DistinguishabilityMatrix::ones(int n) {
  return DistinguishabilityMatrix(ComplexMatrix::Ones(n, n));
}

DistinguishabilityMatrix DistinguishabilityMatrix::identity(int n) {
  return DistinguishabilityMatrix(ComplexMatrix::Identity(n, n));
}

ComplexMatrix DistinguishabilityMatrix::for_photons(const AssignmentList& labels,
                                                    int n_photons) const {
  if (labels.empty()) {
    if (size() != n_photons) {
      throw InvalidArgument("distinguishability matrix is " + std::to_string(size()) + "x" +
                            std::to_string(size()) + " but there are " +
                            std::to_string(n_photons) + " photons and no assignment list");
    }
    return entries_;
  }
  if (static_cast<int>(labels.size()) != n_photons) {
    throw InvalidArgument("assignment list has " + std::to_string(labels.size()) +
                          " labels for " + std::to_string(n_photons) + " photons");
  }
  for (int label : labels) {
    if (label < 0 || label >= size()) {
      throw InvalidArgument("assignment label " + std::to_string(label) + " out of range");
    }
  }
  ComplexMatrix out(n_photons, n_photons);
  for (int a = 0; a < n_photons; ++a) {
    for (int b = 0; b < n_photons; ++b) out(a, b) = entries_(labels[a], labels[b]);
  }
  return out;
}

Complex permanent(const ComplexMatrix& a, Kernel kernel) {
  if (a.rows() != a.cols()) throw InvalidArgument("permanent: matrix must be square");
  if (a.rows() == 0) return 1.0;
  return kernel == Kernel::kNaive ? permanent_naive(a) : permanent_glynn(a);
}

double multipermanent(const ComplexMatrix& b, const ComplexMatrix& s, Kernel kernel) {
  if (b.rows() != b.cols()) throw InvalidArgument("multipermanent: B must be square");
  if (s.rows() != b.rows() || s.cols() != b.cols()) {
    throw InvalidArgument("multipermanent: S is " + std::to_string(s.rows()) + "x" +
                          std::to_string(s.cols()) + " but B is " + std::to_string(b.rows()) +
                          "x" + std::to_string(b.cols()));
  }
  if (b.rows() == 0) return 1.0;
  const Complex value =
      kernel == Kernel::kNaive ? multipermanent_naive(b, s) : multipermanent_glynn(b, s);
  if (std::abs(value.imag()) > kImagTolerance * std::max(1.0, std::abs(value.real()))) {
    throw NumericalError("multipermanent: imaginary part " + std::to_string(value.imag()) +
                         " exceeds tolerance; overlap matrix is probably not Hermitian");
  }
  return value.real();
}

namespace {

double probability_from_photon_overlaps(const TransferMatrix& u, const FockState& input,
                                        const FockState& output, const ComplexMatrix& s_photons,
                                        Kernel kernel) {
  const ComplexMatrix b = submatrix(u.matrix(), input, output);
  double norm = 1.0;
  for (int n : output.occupations()) norm *= factorial(n);
  int first = 0;
  for (int m : input.occupations()) {
    if (m > 1) {
      norm *= permanent(s_photons.block(first, first, m, m), kernel).real();
    }
    first += m;
  }
  const double p = multipermanent(b, s_photons, kernel) / norm;
  if (p < -kProbabilityTolerance || p > 1.0 + kProbabilityTolerance) {
    throw NumericalError("output_probability: " + std::to_string(p) + " for " +
                         input.to_string() + " -> " + output.to_string() +
                         " is not a probability; check unitarity and overlaps");
  }
  return std::clamp(p, 0.0, 1.0);
}

}  // namespace

double output_probability(const TransferMatrix& u, const FockState& input, const FockState& output,
                          const DistinguishabilityMatrix& s, const AssignmentList& labels,
                          Kernel kernel) {
  if (input.photons() != output.photons()) {
    throw InvalidArgument("output_probability: photon number mismatch " + input.to_string() +
                          " -> " + output.to_string());
  }
  const ComplexMatrix s_photons = s.for_photons(labels, input.photons());
  return probability_from_photon_overlaps(u, input, output, s_photons, kernel);
}

double detection_probability_photons(const TransferMatrix& u, const FockState& input,
                                     const ClickPattern& pattern, const ComplexMatrix& s_photons,
                                     Kernel kernel) {
  if (input.modes() != u.modes()) {
    throw InvalidArgument("detection_probability: input has " + std::to_string(input.modes()) +
                          " modes, circuit has " + std::to_string(u.modes()));
  }
  const ClickOutputs outputs = patterns_for_clicks(pattern, input.photons(), u.modes());
  double total = 0.0;
  for (const FockState& out : outputs.states) {
    total += probability_from_photon_overlaps(u, input, out, s_photons, kernel);
  }
  return total;
}

double detection_probability(const TransferMatrix& u, const FockState& input,
                             const ClickPattern& pattern, const DistinguishabilityMatrix& s,
                             const AssignmentList& labels, Kernel kernel) {
  return detection_probability_photons(u, input, pattern,
                                       s.for_photons(labels, input.photons()), kernel);
}

}  // namespace purify
