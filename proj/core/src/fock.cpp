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

#include "purify/fock.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace purify {

FockState::FockState(std::vector<int> occupations) : occupations_(std::move(occupations)) {
  for (int n : occupations_) {
    if (n < 0) throw InvalidArgument("FockState: negative occupation");
  }
}

FockState FockState::vacuum(int modes) {
  if (modes < 0) throw InvalidArgument("FockState::vacuum: negative mode count");
  return FockState(std::vector<int>(static_cast<std::size_t>(modes), 0));
}

int FockState::photons() const {
  return std::accumulate(occupations_.begin(), occupations_.end(), 0);
}

std::vector<int> FockState::photon_modes() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(photons()));
  for (int mode = 0; mode < modes(); ++mode) {
    out.insert(out.end(), static_cast<std::size_t>(occupations_[mode]), mode);
  }
  return out;
}

std::string FockState::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < occupations_.size(); ++i) {
    if (i) os << ',';
    os << occupations_[i];
  }
  os << ')';
  return os.str();
}

ClickPattern::ClickPattern(std::vector<int> detector_modes, std::vector<bool> clicks)
    : detector_modes_(std::move(detector_modes)), clicks_(std::move(clicks)) {
  if (detector_modes_.size() != clicks_.size()) {
    throw InvalidArgument("ClickPattern: one click flag per detector required");
  }
  std::vector<int> sorted = detector_modes_;
  std::sort(sorted.begin(), sorted.end());
  if (!sorted.empty() && sorted.front() < 0) {
    throw InvalidArgument("ClickPattern: negative detector mode");
  }
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InvalidArgument("ClickPattern: two detectors on the same mode");
  }
}

ClickPattern ClickPattern::from_modes(std::span<const int> clicked, std::span<const int> silent) {
  std::vector<int> modes(clicked.begin(), clicked.end());
  std::vector<bool> clicks(clicked.size(), true);
  modes.insert(modes.end(), silent.begin(), silent.end());
  clicks.insert(clicks.end(), silent.size(), false);
  return ClickPattern(std::move(modes), std::move(clicks));
}

int ClickPattern::clicked_count() const {
  return static_cast<int>(std::count(clicks_.begin(), clicks_.end(), true));
}

bool ClickPattern::matches(const FockState& output) const {
  for (std::size_t d = 0; d < detector_modes_.size(); ++d) {
    const int mode = detector_modes_[d];
    if (mode >= output.modes()) return false;
    if (clicks_[d] != (output[mode] > 0)) return false;
  }
  return true;
}

ClickPattern ClickPattern::merged(const ClickPattern& other) const {
  std::vector<int> modes = detector_modes_;
  std::vector<bool> clicks = clicks_;
  modes.insert(modes.end(), other.detector_modes_.begin(), other.detector_modes_.end());
  clicks.insert(clicks.end(), other.clicks_.begin(), other.clicks_.end());
  return ClickPattern(std::move(modes), std::move(clicks));
}

ComplexMatrix submatrix(const ComplexMatrix& m, const FockState& input, const FockState& output) {
  if (input.modes() != m.cols() || output.modes() != m.rows()) {
    throw InvalidArgument("submatrix: state mode count " + std::to_string(input.modes()) + "/" +
                          std::to_string(output.modes()) + " does not match matrix " +
                          std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  if (input.photons() != output.photons()) {
    throw InvalidArgument("submatrix: input has " + std::to_string(input.photons()) +
                          " photons but output has " + std::to_string(output.photons()));
  }
  const std::vector<int> rows = output.photon_modes();
  const std::vector<int> cols = input.photon_modes();
  const auto n = static_cast<Eigen::Index>(rows.size());
  ComplexMatrix b(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) b(r, c) = m(rows[r], cols[c]);
  }
  return b;
}

namespace {

// Per-mode bounds: occupation must lie in [lo[mode], hi[mode]].
void compositions(int remaining, int mode, const std::vector<int>& lo, const std::vector<int>& hi,
                  std::vector<int>& current, std::vector<FockState>& out) {
  const int modes = static_cast<int>(current.size());
  if (mode == modes - 1) {
    if (remaining >= lo[mode] && remaining <= hi[mode]) {
      current[mode] = remaining;
      out.emplace_back(current);
    }
    return;
  }
  int reserved = 0;
  for (int m = mode + 1; m < modes; ++m) reserved += lo[m];
  for (int k = std::min(remaining - reserved, hi[mode]); k >= lo[mode]; --k) {
    current[mode] = k;
    compositions(remaining - k, mode + 1, lo, hi, current, out);
  }
}

}  // namespace

std::vector<FockState> enumerate_outputs(int n_photons, int n_modes) {
  if (n_photons < 0) throw InvalidArgument("enumerate_outputs: negative photon number");
  if (n_modes < 1) throw InvalidArgument("enumerate_outputs: need at least one mode");
  std::vector<int> lo(static_cast<std::size_t>(n_modes), 0);
  std::vector<int> hi(static_cast<std::size_t>(n_modes), n_photons);
  std::vector<int> current(static_cast<std::size_t>(n_modes), 0);
  std::vector<FockState> out;
  compositions(n_photons, 0, lo, hi, current, out);
  return out;
}

ClickOutputs patterns_for_clicks(const ClickPattern& pattern, int n_photons, int n_modes) {
  if (n_photons < 0) throw InvalidArgument("patterns_for_clicks: negative photon number");
  if (n_modes < 1) throw InvalidArgument("patterns_for_clicks: need at least one mode");
  std::vector<int> lo(static_cast<std::size_t>(n_modes), 0);
  std::vector<int> hi(static_cast<std::size_t>(n_modes), n_photons);
  const auto& modes = pattern.detector_modes();
  for (std::size_t d = 0; d < modes.size(); ++d) {
    if (modes[d] >= n_modes) {
      throw InvalidArgument("patterns_for_clicks: detector on mode " + std::to_string(modes[d]) +
                            " outside " + std::to_string(n_modes) + " modes");
    }
    if (pattern.clicks()[d]) {
      lo[modes[d]] = 1;
    } else {
      hi[modes[d]] = 0;
    }
  }
  ClickOutputs result;
  if (pattern.clicked_count() > n_photons) {
    result.feasible = false;
    return result;
  }
  std::vector<int> current(static_cast<std::size_t>(n_modes), 0);
  compositions(n_photons, 0, lo, hi, current, result.states);
  result.feasible = !result.states.empty();
  return result;
}

}  // namespace purify
