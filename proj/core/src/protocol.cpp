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

#include "purify/protocol.hpp"

#include <array>
#include <cmath>
#include <string>

#include "purify/dephasing.hpp"
#include "purify/parallel.hpp"

namespace purify {

namespace {

void check_unit_interval(double value, const char* name) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw InvalidArgument(std::string("NoiseConfig: ") + name + " = " + std::to_string(value) +
                          " outside [0, 1]");
  }
}

void check_losses(const std::vector<double>& t, const char* name) {
  if (t.empty()) return;
  if (static_cast<int>(t.size()) != purifier_modes::kCount) {
    throw InvalidArgument(std::string("NoiseConfig: ") + name + " needs one transmission per mode");
  }
  for (double x : t) check_unit_interval(x, name);
}

// Photons from one emission slot: a source sits on one input mode and
// carries one label of the user's overlap matrix.
struct Source {
  int mode;
  int label;
  int arm;
};

struct Experiment {
  std::vector<Source> sources;
  ClickPattern detection;
};

Experiment raw_experiment() {
  using namespace purifier_modes;
  const std::array<int, 2> clicked = {kArmA, kArmB};
  return {{{kCopyAOuter, 0, 0}, {kCopyBOuter, 3, 1}}, ClickPattern::from_modes(clicked)};
}

Experiment pure_experiment() {
  using namespace purifier_modes;
  const std::array<int, 4> clicked = {kCopyAHerald, kArmA, kArmB, kCopyBHerald};
  const std::array<int, 2> silent = {kCopyAOuter, kCopyBOuter};
  return {{{kCopyAOuter, 0, 0}, {kCopyAHerald, 1, 0}, {kCopyBHerald, 2, 1}, {kCopyBOuter, 3, 1}},
          ClickPattern::from_modes(clicked, silent)};
}

struct Photon {
  int source;
  bool sibling;
};

struct Probabilities {
  double out = 0.0;
  double ref = 0.0;
};

// Sums the interfering and reference detection probabilities over every way
// the sources can emit one or two photons.
Probabilities mixture(const Experiment& ex, const ComplexMatrix& s, const NoiseConfig& config,
                      const TransferMatrix& u, const TransferMatrix& u_ref) {
  const double p2 = p2_from_g2(config.g2);
  const double amp = config.sibling_overlap;
  const auto k = static_cast<int>(ex.sources.size());
  const double classical =
      config.r_final * config.r_final + (1.0 - config.r_final) * (1.0 - config.r_final);

  Probabilities total;
  for (unsigned mask = 0; mask < (1u << k); ++mask) {
    double weight = 1.0;
    std::vector<int> occupations(static_cast<std::size_t>(u.modes()), 0);
    std::vector<Photon> photons;
    for (int a = 0; a < k; ++a) {
      const bool doubled = (mask >> a) & 1u;
      weight *= doubled ? p2 : 1.0 - p2;
      occupations[ex.sources[a].mode] += doubled ? 2 : 1;
      photons.push_back({a, false});
      if (doubled) photons.push_back({a, true});
    }
    if (weight == 0.0) continue;

    const auto n = static_cast<Eigen::Index>(photons.size());
    ComplexMatrix eff(n, n);
    ComplexMatrix eff_ref(n, n);
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = 0; q < n; ++q) {
        const Source& sp = ex.sources[photons[p].source];
        const Source& sq = ex.sources[photons[q].source];
        Complex value = s(sp.label, sq.label);
        if (photons[p].sibling) value *= amp;
        if (photons[q].sibling) value *= amp;
        if (p == q && photons[p].sibling) value += 1.0 - amp * amp;
        eff(p, q) = value;
        eff_ref(p, q) = sp.arm == sq.arm ? value : Complex(0.0);
      }
    }

    const FockState input(occupations);
    total.out += weight * detection_probability_photons(u, input, ex.detection, eff);
    if (config.reference == ReferenceMode::kDistinguishableArms) {
      total.ref += weight * detection_probability_photons(u, input, ex.detection, eff_ref);
    } else {
      total.ref += weight * classical *
                   detection_probability_photons(u_ref, input, ex.detection, eff);
    }
  }
  return total;
}

double visibility_from(const Probabilities& p) {
  if (!(p.ref > 0.0)) {
    throw NumericalError("hom_visibility: reference probability is zero, heralding is degenerate");
  }
  return 1.0 - p.out / p.ref;
}

}  // namespace

void NoiseConfig::validate() const {
  if (!(g2 >= 0.0 && g2 < 0.5)) {
    throw InvalidArgument("NoiseConfig: g2 = " + std::to_string(g2) + " outside [0, 0.5)");
  }
  check_unit_interval(r1, "r1");
  check_unit_interval(r2, "r2");
  check_unit_interval(r_final, "r_final");
  check_unit_interval(sibling_overlap, "sibling_overlap");
  check_losses(losses.input, "losses.input");
  check_losses(losses.after_first, "losses.after_first");
  check_losses(losses.after_second, "losses.after_second");
  check_losses(losses.output, "losses.output");
}

double p2_from_g2(double g2) {
  if (!(g2 >= 0.0 && g2 < 0.5)) {
    throw InvalidArgument("p2_from_g2: g2 = " + std::to_string(g2) + " outside [0, 0.5)");
  }
  return g2 / (1.0 - g2 + std::sqrt(1.0 - 2.0 * g2));
}

double hom_visibility(const TransferMatrix& u, const FockState& input,
                      const ClickPattern& coincidence, const ClickPattern& heralds,
                      const DistinguishabilityMatrix& s, std::span<const int> arms) {
  const int n = input.photons();
  if (s.size() != n || static_cast<int>(arms.size()) != n) {
    throw InvalidArgument("hom_visibility: need one overlap row and one arm per photon");
  }
  const ClickPattern detection = coincidence.merged(heralds);
  ComplexMatrix ref = s.matrix();
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      if (arms[p] != arms[q]) ref(p, q) = 0.0;
    }
  }
  return visibility_from({detection_probability_photons(u, input, detection, s.matrix()),
                          detection_probability_photons(u, input, detection, ref)});
}

Visibilities purified_visibility(const DistinguishabilityMatrix& s, const NoiseConfig& config) {
  config.validate();
  if (s.size() != 4) throw InvalidArgument("purified_visibility: overlap matrix must be 4 x 4");
  const TransferMatrix u =
      purifier_pair_circuit(config.r1, config.r2, config.r_final, config.losses);
  TransferMatrix u_ref;
  if (config.reference == ReferenceMode::kRemovedFinalSplitter) {
    u_ref = reference_circuit(config.r1, config.r2, config.losses);
  }
  Visibilities v;
  v.raw = visibility_from(mixture(raw_experiment(), s.matrix(), config, u, u_ref));
  v.pure = visibility_from(mixture(pure_experiment(), s.matrix(), config, u, u_ref));
  return v;
}

Visibilities purified_visibility(double c, const NoiseConfig& config) {
  return purified_visibility(constant_overlap(4, c), config);
}

Visibilities multiphoton_visibility(double c, double g2, const NoiseConfig& config) {
  NoiseConfig with_g2 = config;
  with_g2.g2 = g2;
  return purified_visibility(c, with_g2);
}

double success_probability(int n) {
  if (n < 2) throw InvalidArgument("success_probability: n must be at least 2");
  double factorial = 1.0;
  for (int i = 2; i < n; ++i) factorial *= i;
  const int exponent = n * (n + 1) / 2 - 1 + n;
  return std::ldexp(factorial * n * n, -exponent);
}

std::vector<SweepRow> bs_sweep(SplitterStage which, std::span<const double> reflectivities,
                               double c, const NoiseConfig& config, int workers) {
  if (reflectivities.empty()) throw InvalidArgument("bs_sweep: empty grid");
  std::vector<SweepRow> rows(reflectivities.size());
  parallel_for(rows.size(), workers, [&](std::size_t i) {
    NoiseConfig local = config;
    const double r = reflectivities[i];
    switch (which) {
      case SplitterStage::kFirst: local.r1 = r; break;
      case SplitterStage::kSecond: local.r2 = r; break;
      case SplitterStage::kFinal: local.r_final = r; break;
    }
    rows[i] = {r, purified_visibility(c, local)};
  });
  return rows;
}

std::vector<PolarizationRow> polarization_bounds(std::span<const double> thetas, double base_c,
                                                 const NoiseConfig& config, int workers) {
  if (thetas.empty()) throw InvalidArgument("polarization_bounds: empty grid");
  const DistinguishabilityMatrix base = constant_overlap(4, base_c);
  std::vector<PolarizationRow> rows(thetas.size());
  parallel_for(rows.size(), workers, [&](std::size_t i) {
    const double theta = thetas[i];
    const PolarizationState flat = PolarizationState::linear(0.0);
    const std::array<PolarizationState, 4> same = {PolarizationState::linear(theta), flat,
                                                   PolarizationState::linear(theta), flat};
    const std::array<PolarizationState, 4> opposite = {PolarizationState::linear(theta), flat,
                                                       PolarizationState::linear(-theta), flat};
    const Visibilities vs =
        purified_visibility(combine_independent(base, polarization_overlaps(same)), config);
    const Visibilities vo =
        purified_visibility(combine_independent(base, polarization_overlaps(opposite)), config);
    rows[i] = {theta, vs.raw, vs.pure, vo.pure};
  });
  return rows;
}

std::vector<RawSweepRow> raw_visibility_sweep(std::span<const double> raw_values, double g2,
                                              const NoiseConfig& config, int workers) {
  if (raw_values.empty()) throw InvalidArgument("raw_visibility_sweep: empty grid");
  std::vector<RawSweepRow> rows(raw_values.size());
  parallel_for(rows.size(), workers, [&](std::size_t i) {
    const double raw = raw_values[i];
    if (!(raw > 0.0 && raw <= 1.0)) {
      throw InvalidArgument("raw_visibility_sweep: raw visibility must lie in (0, 1]");
    }
    const double c = std::sqrt(raw);
    NoiseConfig ideal = config;
    ideal.g2 = 0.0;
    const Visibilities constant = purified_visibility(c, ideal);
    const Visibilities noisy = multiphoton_visibility(c, g2, config);
    rows[i] = {raw, constant.pure, pd_purified(dephasing_ratio_for(raw)), noisy.raw, noisy.pure};
  });
  return rows;
}

std::vector<double> linspace(double start, double stop, int points) {
  if (points < 1) throw InvalidArgument("linspace: empty grid");
  std::vector<double> out(static_cast<std::size_t>(points));
  if (points == 1) {
    out[0] = start;
    return out;
  }
  const double step = (stop - start) / (points - 1);
  for (int i = 0; i < points; ++i) out[i] = start + step * i;
  out.back() = stop;
  return out;
}

}  // namespace purify
