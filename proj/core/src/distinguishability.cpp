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

#include "purify/distinguishability.hpp"

#include <cmath>
#include <random>
#include <string>

#include "purify/parallel.hpp"

namespace purify {

DistinguishabilityMatrix constant_overlap(int n, double c) {
  if (!(c >= 0.0 && c <= 1.0)) {
    throw InvalidArgument("constant_overlap: c = " + std::to_string(c) + " outside [0, 1]");
  }
  if (n < 0) throw InvalidArgument("constant_overlap: negative size");
  ComplexMatrix s = ComplexMatrix::Constant(n, n, c);
  s.diagonal().setOnes();
  return DistinguishabilityMatrix(std::move(s));
}

DistinguishabilityMatrix combine_independent(const DistinguishabilityMatrix& a,
                                             const DistinguishabilityMatrix& b) {
  if (a.size() != b.size()) throw InvalidArgument("combine_independent: size mismatch");
  return DistinguishabilityMatrix(a.matrix().cwiseProduct(b.matrix()));
}

void DephasingParams::validate() const {
  if (!(gamma > 0.0)) throw InvalidArgument("DephasingParams: gamma must be positive");
  if (!(gamma_d >= 0.0)) throw InvalidArgument("DephasingParams: gamma_d must be non-negative");
}

double dephasing_overlap(const DephasingParams& params) {
  params.validate();
  return params.gamma / (params.gamma + 2.0 * params.gamma_d);
}

namespace {

// (exp(z) - 1) / z without cancellation near zero.
Complex expm1_over(Complex z) {
  if (std::abs(z) > 0.1) return (std::exp(z) - 1.0) / z;
  Complex term = 1.0;
  Complex sum = 1.0;
  for (int k = 2; k <= 12; ++k) {
    term *= z / static_cast<double>(k);
    sum += term;
  }
  return sum;
}

struct GridSpec {
  double dt;
  int intervals;
};

GridSpec resolve_grid(const DephasingParams& params, const WavepacketGrid& grid) {
  const double dt = grid.dt > 0.0 ? grid.dt : 0.01 / params.gamma;
  const double horizon = grid.horizon > 0.0 ? grid.horizon : 15.0 / params.gamma;
  if (grid.dt < 0.0 || grid.horizon < 0.0) {
    throw InvalidArgument("sample_dephased_overlaps: dt and horizon must be positive");
  }
  if (horizon < dt) throw InvalidArgument("sample_dephased_overlaps: horizon shorter than dt");
  const int intervals = static_cast<int>(std::lround(horizon / dt));
  return {dt, intervals};
}

ComplexMatrix sample_once(const DephasingParams& params, int n_photons, const GridSpec& grid,
                          std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const double step_sd = std::sqrt(2.0 * params.gamma_d * grid.dt);
  std::normal_distribution<double> normal(0.0, 1.0);
  const int k_max = grid.intervals;

  // theta[i][k] = delta_i t_k + phi_i(t_k)
  std::vector<std::vector<double>> theta(static_cast<std::size_t>(n_photons),
                                         std::vector<double>(static_cast<std::size_t>(k_max) + 1));
  for (int i = 0; i < n_photons; ++i) {
    const double delta = params.deltas.empty() ? 0.0 : params.deltas[i];
    double phi = 0.0;
    theta[i][0] = 0.0;
    for (int k = 1; k <= k_max; ++k) {
      if (step_sd > 0.0) phi += step_sd * normal(rng);
      theta[i][k] = delta * k * grid.dt + phi;
    }
  }

  const double g = params.gamma;
  ComplexMatrix alpha = ComplexMatrix::Identity(n_photons, n_photons);
  for (int i = 0; i < n_photons; ++i) {
    for (int j = i + 1; j < n_photons; ++j) {
      const double drift = (params.deltas.empty() ? 0.0 : params.deltas[i] - params.deltas[j]);
      Complex sum = 0.0;
      for (int k = 0; k < k_max; ++k) {
        const double d0 = theta[i][k] - theta[j][k];
        const double d1 = theta[i][k + 1] - theta[j][k + 1];
        const Complex z(-g * grid.dt, d1 - d0);
        sum += std::exp(Complex(-g * k * grid.dt, d0)) * expm1_over(z);
      }
      sum *= g * grid.dt;
      const double t_end = k_max * grid.dt;
      const double d_end = theta[i][k_max] - theta[j][k_max];
      sum += g * std::exp(Complex(-g * t_end, d_end)) / Complex(g, -drift);
      alpha(i, j) = sum;
      alpha(j, i) = std::conj(sum);
    }
  }
  return alpha;
}

}  // namespace

std::vector<DistinguishabilityMatrix> sample_dephased_overlaps(const DephasingParams& params,
                                                               int n_photons, int n_samples,
                                                               std::uint64_t seed,
                                                               const WavepacketGrid& grid) {
  params.validate();
  if (n_photons < 1) throw InvalidArgument("sample_dephased_overlaps: need at least one photon");
  if (n_samples < 0) throw InvalidArgument("sample_dephased_overlaps: negative sample count");
  if (!params.deltas.empty() && static_cast<int>(params.deltas.size()) != n_photons) {
    throw InvalidArgument("sample_dephased_overlaps: one detuning per photon required");
  }
  const GridSpec spec = resolve_grid(params, grid);
  std::vector<ComplexMatrix> raw(static_cast<std::size_t>(n_samples));
  parallel_for(raw.size(), grid.workers, [&](std::size_t k) {
    raw[k] = sample_once(params, n_photons, spec, derive_seed(seed, k));
  });
  std::vector<DistinguishabilityMatrix> out;
  out.reserve(raw.size());
  for (auto& m : raw) out.emplace_back(std::move(m));
  return out;
}

PolarizationState::PolarizationState(Complex h, Complex v) : h_(h), v_(v) {
  const double norm = std::norm(h_) + std::norm(v_);
  if (std::abs(norm - 1.0) > 1e-12) {
    throw InvalidArgument("PolarizationState: |h|^2 + |v|^2 = " + std::to_string(norm));
  }
}

PolarizationState PolarizationState::linear(double angle) {
  return PolarizationState(std::cos(angle), std::sin(angle));
}

DistinguishabilityMatrix polarization_overlaps(std::span<const PolarizationState> states) {
  const auto n = static_cast<Eigen::Index>(states.size());
  ComplexMatrix s(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) s(j, k) = states[j].overlap(states[k]);
    s(j, j) = 1.0;
  }
  return DistinguishabilityMatrix(std::move(s));
}

}  // namespace purify
