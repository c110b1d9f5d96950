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

#include "purify/circuits.hpp"
#include "purify/common.hpp"
#include "purify/fock.hpp"

namespace purify {

/// Hermitian, unit-diagonal, positive-semidefinite Gram matrix of pairwise
/// internal-state overlaps S(j, k) = <psi_j|psi_k>. Construction validates
/// all invariants and throws InvalidArgument on violation.
class DistinguishabilityMatrix {
 public:
  static constexpr double kEntryTolerance = 1e-10;
  static constexpr double kPsdTolerance = 1e-9;

  explicit DistinguishabilityMatrix(ComplexMatrix entries);

  static DistinguishabilityMatrix ones(int n);
  static DistinguishabilityMatrix identity(int n);

  int size() const { return static_cast<int>(entries_.rows()); }
  const ComplexMatrix& matrix() const { return entries_; }
  Complex operator()(int j, int k) const { return entries_(j, k); }

  /// Photon-level matrix S_eff(a, b) = S(labels[a], labels[b]). An empty
  /// label list means photon j carries label j.
  ComplexMatrix for_photons(const AssignmentList& labels, int n_photons) const;

 private:
  ComplexMatrix entries_;
};

enum class Kernel {
  kNaive,  // explicit permutation sums, O(n n!) / O(n (n!)^2)
  kGlynn,  // Gray-code inclusion-exclusion, O(n 2^n) / O(n 4^n)
};

Complex permanent(const ComplexMatrix& a, Kernel kernel = Kernel::kGlynn);

/// Sum over permutation pairs (sigma, rho) of
///   prod_i B(i, sigma_i) conj(B(i, rho_i)) S(rho_i, sigma_i).
/// Rows of `b` are output slots and columns are photons; `s` is the n x n
/// photon-level overlap matrix. The result is real for Hermitian `s`; an
/// imaginary part above 1e-10 (relative) throws NumericalError.
double multipermanent(const ComplexMatrix& b, const ComplexMatrix& s, Kernel kernel = Kernel::kGlynn);

/// Probability of detecting `output` given `input`, with photon internal
/// states given by `s` and `labels`:
///   Perm(W) / (prod_i n_i! * prod_modes perm(S restricted to that input mode)).
/// The second factor is m_j! when co-moded photons are identical, which is the
/// usual bosonic normalization, and stays correct for any Gram matrix.
double output_probability(const TransferMatrix& u, const FockState& input, const FockState& output,
                          const DistinguishabilityMatrix& s, const AssignmentList& labels = {},
                          Kernel kernel = Kernel::kGlynn);

/// Probability that the detectors in `pattern` fire as specified. Sums
/// output_probability over patterns_for_clicks on all modes of `u`, so loss
/// ancillas and undetected modes are traced out.
double detection_probability(const TransferMatrix& u, const FockState& input,
                             const ClickPattern& pattern, const DistinguishabilityMatrix& s,
                             const AssignmentList& labels = {}, Kernel kernel = Kernel::kGlynn);

/// detection_probability with an explicit photon-level overlap matrix,
/// bypassing DistinguishabilityMatrix validation. Used for reference
/// calculations that zero blocks of an already-validated matrix.
double detection_probability_photons(const TransferMatrix& u, const FockState& input,
                                     const ClickPattern& pattern, const ComplexMatrix& s_photons,
                                     Kernel kernel = Kernel::kGlynn);

}  // namespace purify
