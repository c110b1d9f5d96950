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

#include <span>

#include "purify/permanent.hpp"

namespace purify {

/// Averaged products of wavepacket overlaps over pairs, triangles and
/// four-cycles of photons from the same emitter.
struct OverlapMoments {
  double pair = 1.0;    // <|a_ij|^2>
  double triple = 1.0;  // <a_ij a_jk a_ki>
  double quad = 1.0;    // <a_ij a_jk a_kl a_li>

  void validate() const;
};

/// Coincidence probability behind the final splitter of the purifier pair
/// when each input photon carries the averaged overlaps `m`:
///   (1 + p + p^2 - 2 triple - quad) / (2 (1 + p)^2).
/// Throws NumericalError when the result leaves [0, 1/2], which only happens
/// for moment sets no ensemble of states can produce.
double pd_coincidence(const OverlapMoments& m);

/// Closed-form indistinguishability of the purified photon under pure
/// dephasing, with x = 2 gamma_d / gamma:
///   sqrt((x^3 + 5x^2 + 8x + 3) / ((2x + 3)(x + 1)^3)).
double pd_purified(double x);

/// x such that the raw pairwise overlap 1 / (1 + x) equals `raw_visibility`.
double dephasing_ratio_for(double raw_visibility);

struct MomentEstimate {
  OverlapMoments mean;
  OverlapMoments standard_error;
  /// Largest |mean imaginary part| seen for the triple and quad products.
  double triple_imag = 0.0;
  double quad_imag = 0.0;
  /// 1 - 2 pd_coincidence(mean) and its delta-method standard error.
  double purified = 0.0;
  double purified_se = 0.0;
  int samples = 0;
};

/// Estimates the moments from sampled Gram matrices of at least four photons.
/// Each sample contributes its average over all pairs, ordered triangles
/// (i < j < k) and the three distinct four-cycles of every 4-subset.
MomentEstimate estimate_moments(std::span<const DistinguishabilityMatrix> samples);

}  // namespace purify
