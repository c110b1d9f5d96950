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

#include "purify/histogram_fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <ceres/ceres.h>

#include "purify/parallel.hpp"

namespace purify {

namespace {

void check_unit(double value, const char* name) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw InvalidArgument(std::string(name) + " = " + std::to_string(value) + " outside [0, 1]");
  }
}

template <typename T>
struct Terms {
  T p_bunch, p_split, h1t1, h1t0, h2t0, b0, b1, b2;
  T single_input, split_input, bunched_input, three_photon_input, two_purified;
  T central, one_detector;
};

template <typename T>
void raw_impl(const T& t, const T& v_raw, const SetupGeometry& g, T& central, T& one) {
  const double d = g.demux_split;
  const double s = g.split_bs_reflectivity;
  central = t * t * (d * d * s * s * 0.5) * (1.0 - v_raw);
  one = 2.0 * t * (1.0 - t) * d * d * s +
        t * t * (d * d * s * s * 0.25 * (3.0 - v_raw) + 2.0 * d * s * (1.0 - d * s) * 0.5);
}

template <typename T>
Terms<T> pure_impl(const T& t, const T& v_raw, const T& v_pure, const SetupGeometry& g) {
  const double d = g.demux_split;
  const double s = g.split_bs_reflectivity;
  const double h = 1.0 - s;
  Terms<T> k;
  k.p_bunch = 0.25 * (1.0 + v_raw);
  k.p_split = T(2.0 * s * h);
  k.h1t1 = t * t * k.p_bunch * k.p_split;
  k.h1t0 = t * (2.0 * (1.0 - t) * d * h + t * (1.0 - 2.0 * k.p_bunch) * h);
  k.h2t0 = t * t * k.p_bunch * (h * h);
  k.b1 = t * (2.0 * (1.0 - t) * d * s + t * (k.p_bunch * k.p_split + (1.0 - 2.0 * k.p_bunch) * s));
  k.b2 = t * t * k.p_bunch * (s * s);
  k.b0 = 1.0 - k.b1 - k.b2;
  k.single_input = T(0.5);
  k.split_input = 0.25 * (3.0 - (v_raw + v_pure) / 2.0);
  k.bunched_input = T(0.75);
  k.three_photon_input = 1.0 - 0.125 * (1.0 + 2.0 * v_pure);
  k.two_purified = t * t * t * t * k.p_bunch * k.p_bunch * k.p_split * k.p_split;
  k.central = k.two_purified * 0.5 * (1.0 - v_pure);
  k.one_detector = (k.h1t0 + k.h2t0) * (k.b1 * k.single_input + k.b2 * k.bunched_input) +
                   k.h1t1 * (k.b0 * k.single_input + k.b1 * k.split_input +
                             k.b2 * k.three_photon_input) -
                   k.two_purified * k.split_input + k.two_purified * 0.25 * (3.0 - v_pure);
  return k;
}

struct CountResidual {
  double central;
  double side;
  double pulses;
  double scale;
  double v_raw;
  SetupGeometry geometry;

  template <typename T>
  bool operator()(const T* const x, T* residual) const {
    T c;
    T one;
    if (geometry.mode == SetupMode::kRaw) {
      raw_impl(x[0], x[1], geometry, c, one);
    } else {
      const Terms<T> k = pure_impl(x[0], T(v_raw), x[1], geometry);
      c = k.central;
      one = k.one_detector;
    }
    residual[0] = (pulses * c - central) / scale;
    residual[1] = (pulses * one * one - side) / scale;
    return true;
  }
};

struct Candidate {
  double t = 0.0;
  double v = 0.0;
  double cost = std::numeric_limits<double>::infinity();
  bool usable = false;
};

Candidate solve_from(const CountResidual& model, double t0, double v0) {
  double x[2] = {t0, v0};
  ceres::Problem problem;
  problem.AddResidualBlock(
      new ceres::AutoDiffCostFunction<CountResidual, 2, 2>(new CountResidual(model)), nullptr, x);
  for (int i = 0; i < 2; ++i) {
    problem.SetParameterLowerBound(x, i, 0.0);
    problem.SetParameterUpperBound(x, i, 1.0);
  }
  ceres::Solver::Options options;
  options.linear_solver_type = ceres::DENSE_QR;
  options.max_num_iterations = 200;
  options.function_tolerance = 1e-16;
  options.gradient_tolerance = 1e-20;
  options.parameter_tolerance = 1e-14;
  options.logging_type = ceres::SILENT;
  ceres::Solver::Summary summary;
  ceres::Solve(options, &problem, &summary);
  return {x[0], x[1], summary.final_cost, summary.IsSolutionUsable()};
}

}  // namespace

void SetupGeometry::validate() const {
  check_unit(demux_split, "SetupGeometry.demux_split");
  check_unit(split_bs_reflectivity, "SetupGeometry.split_bs_reflectivity");
}

void PeakCounts::validate() const {
  if (!(central >= 0.0) || !(side >= 0.0)) {
    throw InvalidArgument("PeakCounts: counts must be non-negative");
  }
  if (!(repetition_rate > 0.0)) throw InvalidArgument("PeakCounts: repetition rate must be positive");
  if (!(integration_time > 0.0)) {
    throw InvalidArgument("PeakCounts: integration time must be positive");
  }
}

RawTerms raw_terms(double t, double v_raw, const SetupGeometry& g) {
  check_unit(t, "t");
  check_unit(v_raw, "V_raw");
  g.validate();
  RawTerms out;
  raw_impl(t, v_raw, g, out.central, out.one_detector);
  return out;
}

PureTerms pure_terms(double t, double v_raw, double v_pure, const SetupGeometry& g) {
  check_unit(t, "t");
  check_unit(v_raw, "V_raw");
  check_unit(v_pure, "V_pure");
  g.validate();
  const Terms<double> k = pure_impl(t, v_raw, v_pure, g);
  return {k.p_bunch,      k.p_split,     k.h1t1,          k.h1t0,
          k.h2t0,         k.b0,          k.b1,            k.b2,
          k.single_input, k.split_input, k.bunched_input, k.three_photon_input,
          k.two_purified, k.central,     k.one_detector};
}

ModelCounts raw_count_model(double t, double v_raw, double pulses, const SetupGeometry& g) {
  if (!(pulses >= 0.0)) throw InvalidArgument("raw_count_model: negative pulse count");
  const RawTerms k = raw_terms(t, v_raw, g);
  return {pulses * k.central, pulses * k.one_detector * k.one_detector};
}

ModelCounts pure_count_model(double t, double v_raw, double v_pure, double pulses,
                             const SetupGeometry& g) {
  if (!(pulses >= 0.0)) throw InvalidArgument("pure_count_model: negative pulse count");
  const PureTerms k = pure_terms(t, v_raw, v_pure, g);
  return {pulses * k.central, pulses * k.one_detector * k.one_detector};
}

FitResult fit(const PeakCounts& counts, const SetupGeometry& g, std::optional<double> known_v_raw) {
  counts.validate();
  g.validate();
  if (counts.central <= 0.0 && counts.side <= 0.0) {
    throw InvalidArgument("fit: central and side counts are both zero");
  }
  double v_raw = 0.0;
  if (g.mode == SetupMode::kPurified) {
    if (!known_v_raw) throw InvalidArgument("fit: purified mode needs the raw visibility");
    v_raw = *known_v_raw;
    check_unit(v_raw, "V_raw");
  }
  const double scale = std::max({counts.central, counts.side, 1.0});
  const CountResidual model{counts.central, counts.side, counts.pulses(), scale, v_raw, g};

  constexpr int kGrid = 11;
  Candidate best;
  for (int i = 0; i < kGrid; ++i) {
    for (int j = 0; j < kGrid; ++j) {
      const Candidate c = solve_from(model, i / (kGrid - 1.0), j / (kGrid - 1.0));
      if (c.usable && c.cost < best.cost) best = c;
    }
  }
  if (!best.usable) {
    std::ostringstream msg;
    msg << "fit: no start converged (central=" << counts.central << ", side=" << counts.side << ")";
    throw NumericalError(msg.str());
  }
  FitResult out;
  out.t = best.t;
  out.v = best.v;
  out.residual = std::sqrt(2.0 * best.cost) * scale / std::hypot(counts.central, counts.side);
  return out;
}

Uncertainty mc_uncertainty(const PeakCounts& counts, const SetupGeometry& g,
                           std::optional<double> known_v_raw, int n_resamples,
                           std::uint64_t seed, int workers) {
  if (n_resamples < 100) throw InvalidArgument("mc_uncertainty: need at least 100 resamples");
  counts.validate();
  struct Draw {
    double t = 0.0;
    double v = 0.0;
    bool ok = false;
  };
  std::vector<Draw> draws(static_cast<std::size_t>(n_resamples));
  parallel_for(draws.size(), workers, [&](std::size_t k) {
    std::mt19937_64 rng(derive_seed(seed, k));
    auto poisson = [&rng](double mean) -> double {
      if (mean <= 0.0) return 0.0;
      return static_cast<double>(std::poisson_distribution<long long>(mean)(rng));
    };
    PeakCounts sample = counts;
    sample.central = poisson(counts.central);
    sample.side = poisson(counts.side);
    try {
      const FitResult r = fit(sample, g, known_v_raw);
      draws[k] = {r.t, r.v, true};
    } catch (const NumericalError&) {
    } catch (const InvalidArgument&) {
    }
  });

  Uncertainty out;
  double sum_t = 0.0, sum_v = 0.0, sq_t = 0.0, sq_v = 0.0;
  int ok = 0;
  for (const Draw& d : draws) {
    if (!d.ok) {
      ++out.failures;
      continue;
    }
    ++ok;
    sum_t += d.t;
    sum_v += d.v;
  }
  if (out.failures * 100 > n_resamples || ok < 2) {
    throw NumericalError("mc_uncertainty: " + std::to_string(out.failures) + " of " +
                         std::to_string(n_resamples) + " refits failed");
  }
  const double mean_t = sum_t / ok;
  const double mean_v = sum_v / ok;
  for (const Draw& d : draws) {
    if (!d.ok) continue;
    sq_t += (d.t - mean_t) * (d.t - mean_t);
    sq_v += (d.v - mean_v) * (d.v - mean_v);
  }
  out.sigma_t = std::sqrt(sq_t / (ok - 1));
  out.sigma_v = std::sqrt(sq_v / (ok - 1));
  return out;
}

}  // namespace purify
