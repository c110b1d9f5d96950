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

#include <cstdint>
#include <span>
#include <vector>

#include "purify/permanent.hpp"

namespace purify {

/// Unit diagonal, every off-diagonal entry equal to c. Models photons that
/// share a common state with amplitude sqrt(c) and are otherwise mutually
/// orthogonal. Throws for c outside [0, 1].
DistinguishabilityMatrix constant_overlap(int n, double c);

/// Element-wise product: overlaps of photons whose internal state is a
/// product over two independent degrees of freedom.
DistinguishabilityMatrix combine_independent(const DistinguishabilityMatrix& a,
                                             const DistinguishabilityMatrix& b);

/// Emitter decay rate gamma, pure dephasing rate gamma_d (same time units)
/// and optional slow detunings, one per photon (angular frequency).
struct DephasingParams {
  double gamma = 1.0;
  double gamma_d = 0.0;
  std::vector<double> deltas;

  void validate() const;
  /// x = 2 gamma_d / gamma; the pairwise overlap is 1 / (1 + x).
  double ratio() const { return 2.0 * gamma_d / gamma; }
};

/// gamma / (gamma + 2 gamma_d), the mean squared overlap of two photons from
/// the same emitter with no detuning.
double dephasing_overlap(const DephasingParams& params);

struct WavepacketGrid {
  double dt = 0.0;       // 0 selects 0.01 / gamma
  double horizon = 0.0;  // 0 selects 15 / gamma
  int workers = 1;
};

/// Monte Carlo wavepacket overlaps. Each photon gets
///   f(t) = sqrt(gamma) exp(-gamma t / 2) exp(-i (delta t + phi(t))),  t >= 0,
/// where phi is a Wiener process with variance 2 gamma_d t. Phases are
/// sampled on a uniform grid and interpolated linearly; the overlap integral
/// is then exact on every interval, and the tail past the horizon is added
/// analytically assuming the phase stops diffusing. Returns one Gram matrix
/// alpha(i, j) = integral conj(f_i) f_j per sample.
///
/// Sample k draws from derive_seed(seed, k), so the output is identical for
/// any worker count.
std::vector<DistinguishabilityMatrix> sample_dephased_overlaps(const DephasingParams& params,
                                                               int n_photons, int n_samples,
                                                               std::uint64_t seed,
                                                               const WavepacketGrid& grid = {});

/// Jones vector in the horizontal/vertical basis.
class PolarizationState {
 public:
  PolarizationState(Complex h, Complex v);
  /// Linear polarization at `angle` radians from horizontal.
  static PolarizationState linear(double angle);

  Complex h() const { return h_; }
  Complex v() const { return v_; }
  Complex overlap(const PolarizationState& other) const {
    return std::conj(h_) * other.h_ + std::conj(v_) * other.v_;
  }

 private:
  Complex h_;
  Complex v_;
};

/// S(j, k) = <pol_j | pol_k>.
DistinguishabilityMatrix polarization_overlaps(std::span<const PolarizationState> states);

}  // namespace purify
