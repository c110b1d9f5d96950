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
#include <optional>

#include "purify/common.hpp"

namespace purify {

enum class SetupMode { kRaw, kPurified };

/// Splitting ratios of the counting setups. The demultiplexer (and, in the
/// purified setup, the interference splitter) is `demux_split`; the second
/// splitter layer sends `split_bs_reflectivity` towards the final splitter
/// and the rest to the heralds.
struct SetupGeometry {
  double demux_split = 0.5;
  double split_bs_reflectivity = 0.55;
  SetupMode mode = SetupMode::kRaw;

  void validate() const;
};

/// Central-peak counts and mean side-peak counts of a correlation histogram.
struct PeakCounts {
  double central = 0.0;
  double side = 0.0;
  double repetition_rate = 10e6;  // Hz
  double integration_time = 30.0; // s

  void validate() const;
  double pulses() const { return repetition_rate * integration_time; }
};

/// Per-pulse probabilities of the two-photon setup.
struct RawTerms {
  double central = 0.0;       // coincidence across the final splitter
  double one_detector = 0.0;  // a click on one given output detector
};

/// Per-pulse probabilities of the four-photon setup. `h*t*` count photons of
/// the upper copy at its herald (h) and at the final splitter (t); `b*`
/// count photons of the lower copy at the final splitter.
struct PureTerms {
  double p_bunch = 0.0;
  double p_split = 0.0;
  double h1t1 = 0.0;
  double h1t0 = 0.0;
  double h2t0 = 0.0;
  double b0 = 0.0;
  double b1 = 0.0;
  double b2 = 0.0;
  double single_input = 0.0;
  double split_input = 0.0;
  double bunched_input = 0.0;
  double three_photon_input = 0.0;
  double two_purified = 0.0;
  double central = 0.0;
  double one_detector = 0.0;
};

RawTerms raw_terms(double t, double v_raw, const SetupGeometry& g = {});
PureTerms pure_terms(double t, double v_raw, double v_pure, const SetupGeometry& g = {});

struct ModelCounts {
  double central = 0.0;
  double side = 0.0;
};

/// Expected counts over `pulses` repetitions: central = pulses * P_c,
/// side = pulses * P_1D^2.
ModelCounts raw_count_model(double t, double v_raw, double pulses, const SetupGeometry& g = {});
ModelCounts pure_count_model(double t, double v_raw, double v_pure, double pulses,
                             const SetupGeometry& g = {});

struct FitResult {
  double t = 0.0;
  double v = 0.0;
  /// Root of the summed squared count residuals over the norm of the counts.
  double residual = 0.0;
  double sigma_t = 0.0;
  double sigma_v = 0.0;
};

/// Least-squares inversion of the count model for (t, V) in [0, 1]^2, started
/// from every point of an 11 x 11 grid. Purified mode needs the raw
/// visibility from a prior raw fit and fits V_pure.
FitResult fit(const PeakCounts& counts, const SetupGeometry& g,
              std::optional<double> known_v_raw = std::nullopt);

struct Uncertainty {
  double sigma_t = 0.0;
  double sigma_v = 0.0;
  int failures = 0;
};

/// Redraws both peak counts from Poisson distributions with the observed
/// means, refits each draw and returns the standard deviations. Resample k
/// uses derive_seed(seed, k). Throws NumericalError when more than 1% of
/// refits fail.
Uncertainty mc_uncertainty(const PeakCounts& counts, const SetupGeometry& g,
                           std::optional<double> known_v_raw, int n_resamples,
                           std::uint64_t seed, int workers = 1);

}  // namespace purify
