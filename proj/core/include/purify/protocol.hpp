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
#include <vector>

#include "purify/circuits.hpp"
#include "purify/distinguishability.hpp"
#include "purify/fock.hpp"
#include "purify/permanent.hpp"

namespace purify {

/// How the non-interfering reference probability is obtained.
enum class ReferenceMode {
  /// Same circuit, photons from the two arms made mutually orthogonal (a long
  /// time delay between the arms).
  kDistinguishableArms,
  /// Final splitter removed, scaled by the classical coincidence factor
  /// R^2 + (1 - R)^2 of the final splitter.
  kRemovedFinalSplitter,
};

struct NoiseConfig {
  double g2 = 0.0;
  double r1 = 0.5;
  double r2 = 0.5;
  double r_final = 0.5;
  PurifierLosses losses;
  /// Amplitude overlap of a re-emitted photon with the photon it accompanies:
  /// the extra photon's state is a|parent> + sqrt(1 - a^2)|fresh>. 1 makes
  /// the two identical.
  double sibling_overlap = 1.0;
  ReferenceMode reference = ReferenceMode::kDistinguishableArms;

  void validate() const;
};

/// Probability that a pulse carries two photons given g2, with single-photon
/// brightness normalized to one: (1 - g2 - sqrt(1 - 2 g2)) / g2, evaluated
/// in the cancellation-free form g2 / (1 - g2 + sqrt(1 - 2 g2)).
double p2_from_g2(double g2);

/// 1 - P_out / P_ref for photons entering `input`, conditioned on
/// `coincidence` and `heralds` together. The reference keeps the circuit and
/// zeroes the overlap between photons in different arms; arms[k] names the
/// arm of photon k in FockState::photon_modes() order. Throws NumericalError
/// when the reference probability vanishes.
double hom_visibility(const TransferMatrix& u, const FockState& input,
                      const ClickPattern& coincidence, const ClickPattern& heralds,
                      const DistinguishabilityMatrix& s, std::span<const int> arms);

struct Visibilities {
  double raw = 0.0;
  double pure = 0.0;
  double improvement() const { return pure - raw; }
};

/// Raw and purified visibility of the purifier pair. `s` is 4 x 4 over the
/// input photons on modes 0, 1, 4, 5 (in that order); the raw visibility
/// interferes the photons of modes 0 and 5 alone on the same circuit.
/// Multiphoton emission enters through config.g2.
Visibilities purified_visibility(const DistinguishabilityMatrix& s, const NoiseConfig& config = {});

/// Constant amplitude overlap c between all four photons.
Visibilities purified_visibility(double c, const NoiseConfig& config = {});

/// purified_visibility(c, config) with the configuration's g2 replaced.
Visibilities multiphoton_visibility(double c, double g2, const NoiseConfig& config = {});

/// (n - 1)! / 2^(2 + 3 + ... + n) * n^2 / 2^n.
double success_probability(int n);

enum class SplitterStage { kFirst, kSecond, kFinal };

struct SweepRow {
  double axis = 0.0;
  Visibilities v;
};

/// Varies one splitter layer over `reflectivities`, keeping the other layers
/// at their config values.
std::vector<SweepRow> bs_sweep(SplitterStage which, std::span<const double> reflectivities,
                               double c, const NoiseConfig& config = {}, int workers = 1);

struct PolarizationRow {
  double theta = 0.0;
  double raw = 0.0;
  double pure_same = 0.0;
  double pure_opposite = 0.0;
};

/// Rotates the linear polarization of the photons on modes 0 and 4 by theta
/// (same) or by theta and -theta (opposite). The spectral overlap `base_c`
/// is combined with the polarization overlap.
std::vector<PolarizationRow> polarization_bounds(std::span<const double> thetas,
                                                 double base_c = 1.0,
                                                 const NoiseConfig& config = {}, int workers = 1);

struct RawSweepRow {
  double raw = 0.0;
  double pure_constant = 0.0;
  double pure_dephasing = 0.0;
  double raw_multiphoton = 0.0;
  double pure_multiphoton = 0.0;
};

/// Purified visibility against raw visibility for three models: constant
/// overlap c^2 = raw, the pure-dephasing closed form, and constant overlap
/// with multiphoton emission at `g2`.
std::vector<RawSweepRow> raw_visibility_sweep(std::span<const double> raw_values, double g2,
                                              const NoiseConfig& config = {}, int workers = 1);

/// start, start + step, ..., stop with `points` entries.
std::vector<double> linspace(double start, double stop, int points);

}  // namespace purify
