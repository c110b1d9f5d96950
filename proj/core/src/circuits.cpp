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

#include "purify/circuits.hpp"

#include <cmath>
#include <string>

namespace purify {
namespace {

void check_reflectivity(double r, const char* who) {
  if (!(r >= 0.0 && r <= 1.0)) {
    throw InvalidArgument(std::string(who) + ": reflectivity " + std::to_string(r) +
                          " outside [0, 1]");
  }
}

ComplexMatrix splitter_on(double reflectivity, int i, int j, int total_modes) {
  ComplexMatrix m = ComplexMatrix::Identity(total_modes, total_modes);
  const double t = std::sqrt(1.0 - reflectivity);
  const Complex r(0.0, std::sqrt(reflectivity));
  m(i, i) = t;
  m(j, j) = t;
  m(i, j) = r;
  m(j, i) = r;
  return m;
}

}  // namespace

TransferMatrix::TransferMatrix(ComplexMatrix entries, std::vector<int> loss_modes)
    : entries_(std::move(entries)), loss_modes_(std::move(loss_modes)) {
  if (entries_.rows() != entries_.cols()) {
    throw InvalidArgument("TransferMatrix: matrix must be square");
  }
  for (int mode : loss_modes_) {
    if (mode < 0 || mode >= entries_.rows()) {
      throw InvalidArgument("TransferMatrix: loss mode index out of range");
    }
  }
  const auto n = entries_.rows();
  const ComplexMatrix defect = entries_ * entries_.adjoint() - ComplexMatrix::Identity(n, n);
  unitary_ = n == 0 || defect.cwiseAbs().maxCoeff() <= kUnitaryTolerance;
}

TransferMatrix TransferMatrix::identity(int modes) {
  return TransferMatrix(ComplexMatrix::Identity(modes, modes));
}

TransferMatrix beamsplitter(double reflectivity, int i, int j, int total_modes) {
  check_reflectivity(reflectivity, "beamsplitter");
  if (i == j || i < 0 || j < 0 || i >= total_modes || j >= total_modes) {
    throw InvalidArgument("beamsplitter: modes (" + std::to_string(i) + ", " + std::to_string(j) +
                          ") invalid for " + std::to_string(total_modes) + " modes");
  }
  return TransferMatrix(splitter_on(reflectivity, i, j, total_modes));
}

CircuitBuilder::CircuitBuilder(int physical_modes)
    : physical_modes_(physical_modes),
      current_(ComplexMatrix::Identity(physical_modes, physical_modes)) {
  if (physical_modes < 1) throw InvalidArgument("CircuitBuilder: need at least one mode");
}

void CircuitBuilder::apply(const ComplexMatrix& stage_on_all_modes) {
  current_ = stage_on_all_modes * current_;
}

CircuitBuilder& CircuitBuilder::beamsplitter(double reflectivity, int i, int j) {
  check_reflectivity(reflectivity, "CircuitBuilder::beamsplitter");
  if (i == j || i < 0 || j < 0 || i >= physical_modes_ || j >= physical_modes_) {
    throw InvalidArgument("CircuitBuilder::beamsplitter: invalid modes");
  }
  apply(splitter_on(reflectivity, i, j, static_cast<int>(current_.rows())));
  return *this;
}

CircuitBuilder& CircuitBuilder::loss(std::span<const double> transmissions) {
  if (static_cast<int>(transmissions.size()) != physical_modes_) {
    throw InvalidArgument("loss: expected " + std::to_string(physical_modes_) +
                          " transmissions, got " + std::to_string(transmissions.size()));
  }
  for (double t : transmissions) {
    if (!(t >= 0.0 && t <= 1.0)) {
      throw InvalidArgument("loss: transmission " + std::to_string(t) + " outside [0, 1]");
    }
  }
  for (int mode = 0; mode < physical_modes_; ++mode) {
    const double t = transmissions[static_cast<std::size_t>(mode)];
    if (t == 1.0) continue;
    const auto n = current_.rows();
    ComplexMatrix grown = ComplexMatrix::Identity(n + 1, n + 1);
    grown.topLeftCorner(n, n) = current_;
    current_ = std::move(grown);
    loss_modes_.push_back(static_cast<int>(n));
    apply(splitter_on(1.0 - t, mode, static_cast<int>(n), static_cast<int>(n + 1)));
  }
  return *this;
}

CircuitBuilder& CircuitBuilder::append(const TransferMatrix& stage) {
  if (stage.modes() != physical_modes_ || !stage.loss_modes().empty()) {
    throw InvalidArgument("CircuitBuilder::append: stage must be lossless on the physical modes");
  }
  const auto n = current_.rows();
  ComplexMatrix full = ComplexMatrix::Identity(n, n);
  full.topLeftCorner(physical_modes_, physical_modes_) = stage.matrix();
  apply(full);
  return *this;
}

TransferMatrix CircuitBuilder::build() const { return TransferMatrix(current_, loss_modes_); }

TransferMatrix with_loss(const TransferMatrix& circuit, std::span<const double> transmissions,
                         LossSite site) {
  const int physical = circuit.physical_modes();
  if (static_cast<int>(transmissions.size()) != physical) {
    throw InvalidArgument("with_loss: expected " + std::to_string(physical) +
                          " transmissions, got " + std::to_string(transmissions.size()));
  }
  // Existing ancillas stay where they are; new ones are appended behind them.
  CircuitBuilder builder(physical);
  const ComplexMatrix& original = circuit.matrix();
  std::vector<int> loss_modes = circuit.loss_modes();
  const auto base = original.rows();

  // Express the new loss as a builder over the physical modes, then splice
  // its ancillas after the circuit's own.
  builder.loss(transmissions);
  const TransferMatrix loss_stage = builder.build();
  const auto extra = loss_stage.modes() - physical;
  const auto total = base + extra;

  ComplexMatrix lifted_circuit = ComplexMatrix::Identity(total, total);
  lifted_circuit.topLeftCorner(base, base) = original;

  // Loss stage acts on physical modes [0, physical) and its ancillas, which
  // move from [physical, physical + extra) to [base, base + extra).
  ComplexMatrix lifted_loss = ComplexMatrix::Identity(total, total);
  auto map = [&](Eigen::Index k) { return k < physical ? k : base + (k - physical); };
  for (Eigen::Index r = 0; r < loss_stage.modes(); ++r) {
    for (Eigen::Index c = 0; c < loss_stage.modes(); ++c) {
      lifted_loss(map(r), map(c)) = loss_stage.matrix()(r, c);
    }
  }
  for (Eigen::Index k = 0; k < extra; ++k) loss_modes.push_back(static_cast<int>(base + k));

  ComplexMatrix combined = site == LossSite::kInput ? ComplexMatrix(lifted_circuit * lifted_loss)
                                                    : ComplexMatrix(lifted_loss * lifted_circuit);
  return TransferMatrix(std::move(combined), std::move(loss_modes));
}

namespace {

TransferMatrix build_purifier(double r1, double r2, double r_final, bool with_final,
                              const PurifierLosses& losses) {
  check_reflectivity(r1, "purifier_pair_circuit");
  check_reflectivity(r2, "purifier_pair_circuit");
  check_reflectivity(r_final, "purifier_pair_circuit");
  using namespace purifier_modes;
  CircuitBuilder b(kCount);
  if (!losses.input.empty()) b.loss(losses.input);
  b.beamsplitter(r1, kCopyAOuter, kCopyAHerald).beamsplitter(r1, kCopyBHerald, kCopyBOuter);
  if (!losses.after_first.empty()) b.loss(losses.after_first);
  b.beamsplitter(r2, kCopyAHerald, kArmA).beamsplitter(r2, kArmB, kCopyBHerald);
  if (!losses.after_second.empty()) b.loss(losses.after_second);
  if (with_final) b.beamsplitter(r_final, kArmA, kArmB);
  if (!losses.output.empty()) b.loss(losses.output);
  return b.build();
}

}  // namespace

TransferMatrix purifier_pair_circuit(double r1, double r2, double r_final,
                                     const PurifierLosses& losses) {
  return build_purifier(r1, r2, r_final, true, losses);
}

TransferMatrix reference_circuit(double r1, double r2, const PurifierLosses& losses) {
  return build_purifier(r1, r2, 0.0, false, losses);
}

}  // namespace purify
