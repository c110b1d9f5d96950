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

// Acceptance suite. Prints one PASS/FAIL line per criterion; with a criterion
// number as argument only that criterion runs. Exit status is non-zero when
// any executed criterion fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "oracles/path_oracle.hpp"
#include "oracles/reference_math.hpp"
#include "purify/dephasing.hpp"
#include "purify/distinguishability.hpp"
#include "purify/histogram_fit.hpp"
#include "purify/parallel.hpp"
#include "purify/permanent.hpp"
#include "purify/protocol.hpp"

namespace purify {
namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

int workers() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

std::string sci(double v) {
  std::ostringstream out;
  out.precision(3);
  out << std::scientific << v;
  return out.str();
}

double degrees(double d) { return d * std::acos(-1.0) / 180.0; }

ComplexMatrix literal_m_u() {
  const double s = std::sqrt(2.0);
  const Complex i(0.0, 1.0);
  ComplexMatrix m(6, 6);
  m << 2.0, s * i, -1.0, -i, 0.0, 0.0,
       2.0 * i, s, i, -1.0, 0.0, 0.0,
       0.0, 2.0 * i, s, s * i, 0.0, 0.0,
       0.0, 0.0, s * i, s, 2.0 * i, 0.0,
       0.0, 0.0, -1.0, i, s, 2.0 * i,
       0.0, 0.0, -i, -1.0, i * s, 2.0;
  return m / (2.0 * s);
}

Outcome success_probabilities() {
  const double p2 = success_probability(2);
  const double p3 = success_probability(3);
  const bool pass = p2 == 0.25 && std::abs(p3 - 9.0 / 128.0) <= 1e-15;
  std::ostringstream d;
  d.precision(17);
  d << "P(2) = " << p2 << ", P(3) = " << p3;
  return {pass, d.str()};
}

Outcome normalization() {
  std::mt19937_64 rng(2);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const int modes = 2 + trial % 5;
    const int photons = 1 + trial % 4;
    std::vector<int> occ(static_cast<std::size_t>(modes), 0);
    for (int k = 0; k < photons; ++k) ++occ[std::uniform_int_distribution<int>(0, modes - 1)(rng)];
    const FockState input(occ);
    const TransferMatrix u(oracle::random_unitary(modes, 300 + trial));
    const DistinguishabilityMatrix s(oracle::random_gram(photons, 1 + trial % 3, 400 + trial));
    double total = 0.0;
    for (const FockState& out : enumerate_outputs(photons, modes)) {
      total += output_probability(u, input, out, s);
    }
    worst = std::max(worst, std::abs(total - 1.0));
  }
  return {worst <= 1e-9, "max |sum - 1| = " + sci(worst)};
}

Outcome model_reductions() {
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 6;
    std::srand(5000 + trial);
    const ComplexMatrix b = ComplexMatrix::Random(n, n);
    const double ones = multipermanent(b, ComplexMatrix::Ones(n, n));
    const double id = multipermanent(b, ComplexMatrix::Identity(n, n));
    worst = std::max(worst, std::abs(ones - std::norm(oracle::permutation_sum(b))));
    worst = std::max(worst,
                     std::abs(id - oracle::permutation_sum(b.cwiseAbs2().cast<Complex>()).real()));
  }
  return {worst <= 1e-10, "max deviation = " + sci(worst)};
}

Outcome hom_law() {
  const TransferMatrix bs = beamsplitter(0.5, 0, 1, 2);
  const std::array<int, 2> both = {0, 1};
  const std::array<int, 2> arms = {0, 1};
  double worst = 0.0;
  for (int i = 0; i <= 100; ++i) {
    const double c = i / 100.0;
    const double v = hom_visibility(bs, FockState({1, 1}), ClickPattern::from_modes(both),
                                    ClickPattern(), constant_overlap(2, c), arms);
    worst = std::max(worst, std::abs(v - c * c));
  }
  return {worst <= 1e-12, "max |V - c^2| = " + sci(worst)};
}

Outcome m_u_equivalence() {
  // The literal matrix maps input rows to output columns.
  const ComplexMatrix lit = literal_m_u();
  const TransferMatrix u = purifier_pair_circuit(0.5, 0.5, 0.5);
  const auto ones = DistinguishabilityMatrix::ones(4);
  double worst = 0.0;
  for (const FockState& in : enumerate_outputs(4, 6)) {
    const auto rows = in.photon_modes();
    double in_norm = 1.0;
    for (int m = 0; m < 6; ++m) in_norm *= std::tgamma(in[m] + 1.0);
    for (const FockState& out : enumerate_outputs(4, 6)) {
      const auto cols = out.photon_modes();
      ComplexMatrix sub(4, 4);
      for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) sub(r, c) = lit(rows[r], cols[c]);
      }
      double norm = in_norm;
      for (int m = 0; m < 6; ++m) norm *= std::tgamma(out[m] + 1.0);
      const double expected = std::norm(oracle::permutation_sum(sub)) / norm;
      worst = std::max(worst, std::abs(output_probability(u, in, out, ones) - expected));
    }
  }
  const FockState in({1, 1, 0, 0, 1, 1});
  const FockState out({0, 1, 1, 1, 1, 0});
  std::ostringstream d;
  d << "max deviation over 126 x 126 transitions = " << worst
    << ", P_out(110011 -> 011110) = " << output_probability(u, in, out, ones);
  return {worst <= 1e-10, d.str()};
}

Outcome measured_triples() {
  struct Point {
    double raw, g2, measured;
  };
  const std::array<Point, 3> points = {{{0.5829, 0.07, 0.685}, {0.8332, 0.02, 0.9090},
                                        {0.9050, 0.02, 0.9327}}};
  bool pass = true;
  std::ostringstream d;
  d.precision(4);
  d << std::fixed;
  for (const Point& p : points) {
    const Visibilities v = multiphoton_visibility(std::sqrt(p.raw), p.g2);
    const bool ok = std::abs(v.pure - p.measured) <= 0.05;
    pass = pass && ok;
    d << p.raw << "->" << v.pure << " (measured " << p.measured << ") ";
  }
  return {pass, d.str()};
}

Outcome pd_closed_form() {
  bool pass = pd_purified(0.0) == 1.0;
  for (int i = 1; i <= 1000; ++i) pass = pass && pd_purified(0.01 * i) < pd_purified(0.01 * (i - 1));
  std::ostringstream d;
  d.precision(5);
  d << std::fixed;
  for (double x : {0.05, 0.2, 1.0}) {
    const DephasingParams p{1.0, x / 2.0, {}};
    const auto samples = sample_dephased_overlaps(p, 4, 10000, derive_seed(7, 1000 * x), {0, 0, workers()});
    const MomentEstimate e = estimate_moments(samples);
    const double closed = pd_purified(x);
    const bool ok = std::abs(e.purified - closed) <= 3.0 * e.purified_se + 1e-12;
    pass = pass && ok;
    d << "x=" << x << ": MC " << e.purified << " +- " << e.purified_se << " vs " << closed
      << (ok ? " ok; " : " MISMATCH; ");
  }
  return {pass, d.str()};
}

Outcome dephasing_overlap_oracle() {
  bool pass = true;
  std::ostringstream d;
  d.precision(5);
  d << std::fixed;
  const std::array<std::array<double, 2>, 3> settings = {{{1.0, 0.05}, {1.0, 0.25}, {2.0, 1.0}}};
  std::uint64_t stream = 0;
  for (const auto& [gamma, gamma_d] : settings) {
    const DephasingParams p{gamma, gamma_d, {}};
    const auto samples = sample_dephased_overlaps(p, 2, 10000, derive_seed(8, stream++), {0, 0, workers()});
    double sum = 0.0;
    double sq = 0.0;
    for (const auto& s : samples) {
      sum += std::norm(s(0, 1));
      sq += std::pow(std::norm(s(0, 1)), 2);
    }
    const double n = static_cast<double>(samples.size());
    const double mean = sum / n;
    const double se = std::sqrt((sq / n - mean * mean) / (n - 1.0));
    const double expected = dephasing_overlap(p);
    const bool ok = std::abs(mean - expected) <= 3.0 * se + 1e-12;
    pass = pass && ok;
    d << "(" << gamma << "," << gamma_d << "): " << mean << " vs " << expected << "; ";
  }
  const DephasingParams detuned{1.0, 0.0, {1.0, 0.0}};
  const auto samples = sample_dephased_overlaps(detuned, 2, 100, 9);
  double mean = 0.0;
  for (const auto& s : samples) mean += std::norm(s(0, 1)) / 100.0;
  const bool ok = std::abs(mean - 0.5) <= 1e-12;
  pass = pass && ok;
  d << "detuned: " << mean << " vs 0.5";
  return {pass, d.str()};
}

Outcome imperfection_invariances() {
  const double c = std::sqrt(0.8);
  const Visibilities base = purified_visibility(c);
  double worst = 0.0;
  const auto grid = linspace(0.3, 0.7, 9);
  for (auto stage : {SplitterStage::kFirst, SplitterStage::kSecond}) {
    for (const auto& row : bs_sweep(stage, grid, c, {}, workers())) {
      worst = std::max(worst, std::abs(row.v.pure - base.pure));
    }
  }
  const std::array<double, 2> finals = {0.3, 0.5};
  const auto final_rows = bs_sweep(SplitterStage::kFinal, finals, c);
  const bool degraded = final_rows[0].v.pure < final_rows[1].v.pure;

  NoiseConfig uniform;
  uniform.losses.input = std::vector<double>(6, 0.55);
  const Visibilities u = purified_visibility(c, uniform);
  NoiseConfig after_first;
  after_first.losses.after_first = {0.9, 0.6, 0.7, 0.8, 0.5, 1.0};
  const Visibilities a = purified_visibility(c, after_first);
  const double loss_dev = std::max({std::abs(u.raw - base.raw), std::abs(u.pure - base.pure),
                                    std::abs(a.raw - base.raw), std::abs(a.pure - base.pure)});

  const double c0 = std::sqrt(0.5829);
  const double imp0 = multiphoton_visibility(c0, 0.0).improvement();
  const double imp7 = multiphoton_visibility(c0, 0.07).improvement();

  std::ostringstream d;
  d << "splitter dev " << worst << ", V(r_f=0.3) " << final_rows[0].v.pure << " < V(0.5) "
    << final_rows[1].v.pure << ", loss dev " << loss_dev << ", improvement g2=0.07 " << imp7
    << " < g2=0 " << imp0;
  return {worst <= 1e-9 && degraded && loss_dev <= 1e-9 && imp7 < imp0, d.str()};
}

Outcome polarization() {
  std::vector<double> thetas;
  for (int k = 1; k <= 10; ++k) thetas.push_back(degrees(4.5 * k));
  bool order = true;
  bool same_above = true;
  bool opposite_above = true;
  std::ostringstream d;
  d.precision(5);
  d << std::fixed;
  for (const auto& r : polarization_bounds(thetas, 1.0, {}, workers())) {
    order = order && r.pure_same >= r.pure_opposite;
    same_above = same_above && r.pure_same >= r.raw;
    const bool opp = r.pure_opposite >= r.raw;
    opposite_above = opposite_above && opp;
    if (!opp) {
      d << "theta=" << r.theta * 180.0 / std::acos(-1.0) << ": opposite " << r.pure_opposite
        << " < raw " << r.raw << "; ";
    }
  }
  d << "same>=opposite " << (order ? "yes" : "no") << ", same>=raw "
    << (same_above ? "yes" : "no") << ", opposite>=raw " << (opposite_above ? "yes" : "no");
  return {order && same_above && opposite_above, d.str()};
}

Outcome histogram_fit_round_trip() {
  constexpr double kRawPulses = 10e6 * 30.0;
  constexpr double kPurePulses = 10e6 * 800.0;
  SetupGeometry raw_g;
  SetupGeometry pure_g;
  pure_g.mode = SetupMode::kPurified;

  const ModelCounts mr = raw_count_model(0.3, 0.9, kRawPulses, raw_g);
  const PeakCounts raw_counts{mr.central, mr.side, 10e6, 30.0};
  const FitResult fr = fit(raw_counts, raw_g);
  const ModelCounts mp = pure_count_model(0.3, 0.83, 0.91, kPurePulses, pure_g);
  const PeakCounts pure_counts{mp.central, mp.side, 10e6, 800.0};
  const FitResult fp = fit(pure_counts, pure_g, 0.83);
  const double noiseless = std::max({std::abs(fr.t - 0.3), std::abs(fr.v - 0.9),
                                     std::abs(fp.t - 0.3), std::abs(fp.v - 0.91)});

  auto coverage = [&](const PeakCounts& counts, const SetupGeometry& g, std::optional<double> v_raw,
                      double t_true, double v_true, std::uint64_t seed) {
    const Uncertainty sigma = mc_uncertainty(counts, g, v_raw, 200, seed, workers());
    std::vector<int> hits(500, 0);
    parallel_for(hits.size(), workers(), [&](std::size_t k) {
      std::mt19937_64 rng(derive_seed(seed + 1, k));
      PeakCounts noisy = counts;
      noisy.central = static_cast<double>(std::poisson_distribution<long long>(counts.central)(rng));
      noisy.side = static_cast<double>(std::poisson_distribution<long long>(counts.side)(rng));
      const FitResult r = fit(noisy, g, v_raw);
      hits[k] = std::abs(r.t - t_true) <= 3.0 * sigma.sigma_t &&
                std::abs(r.v - v_true) <= 3.0 * sigma.sigma_v;
    });
    return std::count(hits.begin(), hits.end(), 1) / 500.0;
  };
  const double raw_cov = coverage(raw_counts, raw_g, std::nullopt, 0.3, 0.9, 100);
  const double pure_cov = coverage(pure_counts, pure_g, 0.83, 0.3, 0.91, 200);

  double path_dev = 0.0;
  for (double t : {0.1, 0.3, 0.7}) {
    for (double v : {0.5, 0.83, 0.95}) {
      const RawTerms k = raw_terms(t, v);
      const auto o = oracle::raw_setup(t, v, 0.5, 0.55);
      path_dev = std::max({path_dev, std::abs(k.central - o.central),
                           std::abs(k.one_detector - o.top_click)});
      const PureTerms pk = pure_terms(t, v, 0.91);
      const auto copy = oracle::pure_copy(t, v, 0.5, 0.55);
      auto at = [&](int h, int f) {
        const auto it = copy.find({h, f});
        return it == copy.end() ? 0.0 : it->second;
      };
      path_dev = std::max({path_dev, std::abs(pk.h1t1 - at(1, 1)), std::abs(pk.h1t0 - at(1, 0)),
                           std::abs(pk.h2t0 - at(2, 0)),
                           std::abs(pk.b0 - oracle::pure_marginal_final(copy, 0)),
                           std::abs(pk.b1 - oracle::pure_marginal_final(copy, 1)),
                           std::abs(pk.b2 - oracle::pure_marginal_final(copy, 2))});
    }
  }
  std::ostringstream d;
  d << "noiseless dev " << noiseless << ", 3-sigma coverage raw " << raw_cov << " pure "
    << pure_cov << ", path-enumeration dev " << path_dev;
  return {noiseless <= 1e-6 && raw_cov >= 0.95 && pure_cov >= 0.95 && path_dev <= 1e-12, d.str()};
}

Outcome performance() {
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  NoiseConfig noisy;
  noisy.g2 = 0.02;
  const Visibilities v = purified_visibility(std::sqrt(0.9), noisy);
  const double single = std::chrono::duration<double>(clock::now() - t0).count();

  const auto t1 = clock::now();
  const auto grid = linspace(0.5, 1.0, 51);
  const auto rows = raw_visibility_sweep(grid, 0.02, {}, workers());
  const double sweep = std::chrono::duration<double>(clock::now() - t1).count();
  std::ostringstream d;
  d << "single evaluation (g2 = 0.02) " << single << " s, 51-point three-model sweep " << sweep
    << " s (" << rows.size() << " rows, V_pure " << v.pure << ")";
  return {single < 1.0 && sweep < 60.0, d.str()};
}

}  // namespace
}  // namespace purify

int main(int argc, char** argv) {
  using namespace purify;
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"success probability", success_probabilities},
      {"normalization", normalization},
      {"model reductions", model_reductions},
      {"HOM law", hom_law},
      {"M_U equivalence", m_u_equivalence},
      {"measured triples", measured_triples},
      {"PD closed form vs Monte Carlo", pd_closed_form},
      {"dephasing overlap oracle", dephasing_overlap_oracle},
      {"imperfection invariances", imperfection_invariances},
      {"polarization bounds", polarization},
      {"histogram fit round trip", histogram_fit_round_trip},
      {"performance", performance},
  };
  int first = 1;
  int last = static_cast<int>(criteria.size());
  if (argc > 1) first = last = std::atoi(argv[1]);
  if (first < 1 || last > static_cast<int>(criteria.size())) {
    std::fprintf(stderr, "usage: acceptance [criterion 1-%zu]\n", criteria.size());
    return 2;
  }
  bool all = true;
  for (int i = first; i <= last; ++i) {
    const auto& [name, run] = criteria[static_cast<std::size_t>(i - 1)];
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all = all && o.pass;
    std::printf("%s criterion %d (%s): %s\n", o.pass ? "PASS" : "FAIL", i, name, o.detail.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
