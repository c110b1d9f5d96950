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

#include "purify/common.hpp"

namespace purify {

/// Linear-optical mode transformation, indexed (output mode, input mode):
/// an input creation operator a_in^dagger maps to sum_out m(out, in) a_out^dagger.
///
/// Lossy circuits are stored as unitary dilations. Ancilla modes are appended
/// after the physical modes, start in vacuum and are never detected; they are
/// listed in loss_modes().
class TransferMatrix {
 public:
  TransferMatrix() = default;
  explicit TransferMatrix(ComplexMatrix entries, std::vector<int> loss_modes = {});

  const ComplexMatrix& matrix() const { return entries_; }
  int modes() const { return static_cast<int>(entries_.rows()); }
  int physical_modes() const { return modes() - static_cast<int>(loss_modes_.size()); }
  const std::vector<int>& loss_modes() const { return loss_modes_; }
  /// U U^dagger = 1 within 1e-10, evaluated once at construction.
  bool is_unitary() const { return unitary_; }

  static TransferMatrix identity(int modes);

 private:
  ComplexMatrix entries_;
  std::vector<int> loss_modes_;
  bool unitary_ = false;
};

inline constexpr double kUnitaryTolerance = 1e-10;

/// Identity except for [[sqrt(1-R), i sqrt(R)], [i sqrt(R), sqrt(1-R)]] on
/// modes (i, j). R is the reflectivity (probability of changing mode).
TransferMatrix beamsplitter(double reflectivity, int i, int j, int total_modes);

/// Builds a circuit element by element in propagation order. Loss stages grow
/// the matrix by one vacuum ancilla per lossy mode.
class CircuitBuilder {
 public:
  explicit CircuitBuilder(int physical_modes);

  CircuitBuilder& beamsplitter(double reflectivity, int i, int j);
  /// One transmission per physical mode. Mode k couples to a fresh ancilla
  /// through a splitter of reflectivity 1 - t_k; t_k == 1 adds nothing.
  CircuitBuilder& loss(std::span<const double> transmissions);
  /// Appends an existing lossless circuit on the physical modes.
  CircuitBuilder& append(const TransferMatrix& stage);

  TransferMatrix build() const;

 private:
  void apply(const ComplexMatrix& stage_on_all_modes);

  int physical_modes_;
  ComplexMatrix current_;
  std::vector<int> loss_modes_;
};

enum class LossSite { kInput, kOutput };

/// Adds loss in front of (kInput) or behind (kOutput) `circuit`.
/// `transmissions` has one entry per physical mode of `circuit`.
TransferMatrix with_loss(const TransferMatrix& circuit, std::span<const double> transmissions,
                         LossSite site = LossSite::kInput);

/// Mode layout of the two-copy purifier (0-based). Copy A takes photons on
/// modes 0 and 1, copy B on modes 4 and 5. Modes 1 and 4 carry the herald
/// detectors, modes 2 and 3 the purified photons that meet on the final
/// splitter, modes 0 and 5 are monitored for silence.
namespace purifier_modes {
inline constexpr int kCount = 6;
inline constexpr int kCopyAOuter = 0;
inline constexpr int kCopyAHerald = 1;
inline constexpr int kArmA = 2;
inline constexpr int kArmB = 3;
inline constexpr int kCopyBHerald = 4;
inline constexpr int kCopyBOuter = 5;
}  // namespace purifier_modes

/// Transmissions inserted between the purifier's splitter layers. Each list
/// is either empty (lossless) or has one entry per physical mode.
struct PurifierLosses {
  std::vector<double> input;
  std::vector<double> after_first;
  std::vector<double> after_second;
  std::vector<double> output;
};

/// Two copies of the n = 2 purifier followed by the interference splitter:
/// BS(r1) on (0,1) and (4,5), then BS(r2) on (1,2) and (3,4), then
/// BS(r_final) on (2,3).
TransferMatrix purifier_pair_circuit(double r1, double r2, double r_final,
                                     const PurifierLosses& losses = {});

/// purifier_pair_circuit with the final splitter removed.
TransferMatrix reference_circuit(double r1, double r2, const PurifierLosses& losses = {});

}  // namespace purify
