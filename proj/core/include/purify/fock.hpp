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

#include <compare>
#include <span>
#include <string>
#include <vector>

#include "purify/common.hpp"

namespace purify {

/// Photon occupation numbers, one entry per optical mode.
class FockState {
 public:
  FockState() = default;
  explicit FockState(std::vector<int> occupations);

  static FockState vacuum(int modes);

  int modes() const { return static_cast<int>(occupations_.size()); }
  int photons() const;
  int operator[](int mode) const { return occupations_.at(mode); }
  std::span<const int> occupations() const { return occupations_; }

  /// Mode index of every photon, ascending, repeated per occupation. This is
  /// the row/column order used by submatrix() and by AssignmentList.
  std::vector<int> photon_modes() const;

  /// "(0,1,1,1,1,0)"
  std::string to_string() const;

  friend bool operator==(const FockState&, const FockState&) = default;
  friend auto operator<=>(const FockState&, const FockState&) = default;

 private:
  std::vector<int> occupations_;
};

/// Internal-state label of each photon, in FockState::photon_modes() order.
/// Labels index a DistinguishabilityMatrix; photons sharing a label are in
/// the same internal state.
using AssignmentList = std::vector<int>;

/// Non-number-resolving detectors watching a subset of modes. A mode with a
/// silent detector must be empty; a mode with no detector is unconstrained.
class ClickPattern {
 public:
  ClickPattern() = default;
  ClickPattern(std::vector<int> detector_modes, std::vector<bool> clicks);

  /// Detectors on `clicked` (all firing) and `silent` (all dark).
  static ClickPattern from_modes(std::span<const int> clicked, std::span<const int> silent = {});

  const std::vector<int>& detector_modes() const { return detector_modes_; }
  const std::vector<bool>& clicks() const { return clicks_; }
  int clicked_count() const;
  bool matches(const FockState& output) const;

  /// Union of two detector sets; a mode may not appear in both.
  ClickPattern merged(const ClickPattern& other) const;

 private:
  std::vector<int> detector_modes_;
  std::vector<bool> clicks_;
};

/// The n x n matrix whose permanent gives the transition amplitude from
/// `input` to `output`. Rows repeat output modes, columns repeat input modes,
/// both ascending with repetitions contiguous: B(r, c) = m(out[r], in[c]).
/// `m` is indexed (output mode, input mode).
ComplexMatrix submatrix(const ComplexMatrix& m, const FockState& input, const FockState& output);

/// Every way of placing n_photons into n_modes, ordered with the first mode's
/// occupation descending, then the second's, and so on.
std::vector<FockState> enumerate_outputs(int n_photons, int n_modes);

struct ClickOutputs {
  /// False when no photon-number assignment can produce the pattern (for
  /// example more clicks than photons). `states` is then empty.
  bool feasible = true;
  std::vector<FockState> states;
};

/// All outputs with n_photons that produce `pattern`, in enumerate_outputs
/// order.
ClickOutputs patterns_for_clicks(const ClickPattern& pattern, int n_photons, int n_modes);

}  // namespace purify
