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

#include "purify_cli/cli.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "purify/dephasing.hpp"
#include "purify/distinguishability.hpp"
#include "purify/histogram_fit.hpp"
#include "purify/parallel.hpp"
#include "purify/peak_io.hpp"
#include "purify/protocol.hpp"
#include "purify_cli/config.hpp"
#include "purify_cli/table.hpp"

namespace purify::cli {

namespace {

using nlohmann::ordered_json;

struct Globals {
  std::string config;
  std::string out;
  std::string format = "csv";
  std::optional<std::uint64_t> seed;
  int workers = 1;
};

struct FitFlags {
  std::string counts;
  std::string histogram;
  std::string mode = "raw";
  std::optional<double> v_raw;
  std::optional<double> rate;
  std::optional<double> time;
  double demux = 0.5;
  double split = 0.55;
  int mc_resamples = 0;
};

double radians(double deg) { return deg * std::numbers::pi / 180.0; }

std::vector<double> read_grid(const Fields& f) {
  const Fields g = f.object("grid");
  const double start = g.number("start");
  const double stop = g.number("stop");
  const long long points = g.integer("points", 0);
  g.finish();
  if (points < 1) throw ConfigError("field \"grid.points\" must be at least 1 (empty grid)");
  return linspace(start, stop, static_cast<int>(points));
}

DistinguishabilityMatrix read_matrix(const Fields& f) {
  const ordered_json& rows = f.raw("overlaps");
  if (!rows.is_array() || rows.size() != 4) {
    throw ConfigError("field \"overlaps\" must be a 4 x 4 array");
  }
  ComplexMatrix s(4, 4);
  for (int r = 0; r < 4; ++r) {
    if (!rows[r].is_array() || rows[r].size() != 4) {
      throw ConfigError("field \"overlaps\" must be a 4 x 4 array");
    }
    for (int c = 0; c < 4; ++c) {
      const ordered_json& e = rows[r][c];
      if (e.is_number()) {
        s(r, c) = e.get<double>();
      } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
        s(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
      } else {
        throw ConfigError("overlaps entries must be numbers or [re, im] pairs");
      }
    }
  }
  try {
    return DistinguishabilityMatrix(s);
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("field \"overlaps\": ") + e.what());
  }
}

std::array<PolarizationState, 4> rotated(double theta, bool opposite) {
  const PolarizationState flat = PolarizationState::linear(0.0);
  return {PolarizationState::linear(theta), flat,
          PolarizationState::linear(opposite ? -theta : theta), flat};
}

Table simulate(const ordered_json& config) {
  const Fields f(config, "");
  Table t;
  t.command = "simulate";
  t.input = config;
  t.columns = {"scenario", "model", "V_raw", "V_pure", "improvement", "success_probability"};
  const std::string id = f.text("id", "scenario");
  const std::string model = f.text("model");
  Visibilities v;
  if (model == "dephasing") {
    const double x = f.has("x") ? f.number("x")
                                : 2.0 * f.number("gamma_d") / f.number("gamma", 1.0);
    if (f.number("g2", 0.0) != 0.0) {
      throw ConfigError("model \"dephasing\" is a closed form without multiphoton terms; drop g2");
    }
    if (!(x >= 0.0)) throw ConfigError("dephasing ratio x must be non-negative");
    v = {1.0 / (1.0 + x), pd_purified(x)};
  } else {
    const NoiseConfig noise = read_noise(f);
    if (model == "constant") {
      v = purified_visibility(read_overlap(f), noise);
    } else if (model == "polarization") {
      const double theta = radians(f.number("theta_deg"));
      const std::string direction = f.text("direction", "same");
      if (direction != "same" && direction != "opposite") {
        throw ConfigError("field \"direction\" must be same or opposite");
      }
      const auto states = rotated(theta, direction == "opposite");
      const auto s = combine_independent(constant_overlap(4, f.number("base_c", 1.0)),
                                         polarization_overlaps(states));
      v = purified_visibility(s, noise);
    } else if (model == "matrix") {
      v = purified_visibility(read_matrix(f), noise);
    } else {
      throw ConfigError("field \"model\" must be constant, dephasing, polarization or matrix");
    }
  }
  f.finish();
  t.rows.push_back({id, model, v.raw, v.pure, v.improvement(), success_probability(2)});
  return t;
}

Table sweep(const ordered_json& config, int workers) {
  const Fields f(config, "");
  Table t;
  t.command = "sweep";
  t.input = config;
  const std::string axis = f.text("sweep");
  const std::vector<double> grid = read_grid(f);
  const NoiseConfig noise = read_noise(f);

  if (axis == "raw_visibility") {
    f.finish();
    t.columns = {"raw_visibility", "V_pure_multipermanent", "V_pure_dephasing",
                 "V_raw_multiphoton", "V_pure_multiphoton"};
    for (const auto& r : raw_visibility_sweep(grid, noise.g2, noise, workers)) {
      t.rows.push_back({r.raw, r.pure_constant, r.pure_dephasing, r.raw_multiphoton,
                        r.pure_multiphoton});
    }
  } else if (axis == "r1" || axis == "r2" || axis == "r_final") {
    const double c = read_overlap(f);
    f.finish();
    const SplitterStage stage = axis == "r1"   ? SplitterStage::kFirst
                                : axis == "r2" ? SplitterStage::kSecond
                                               : SplitterStage::kFinal;
    t.columns = {axis, "V_raw", "V_pure", "improvement"};
    for (const auto& r : bs_sweep(stage, grid, c, noise, workers)) {
      t.rows.push_back({r.axis, r.v.raw, r.v.pure, r.v.improvement()});
    }
  } else if (axis == "theta_deg") {
    const double base_c = f.number("base_c", 1.0);
    f.finish();
    std::vector<double> thetas;
    for (double d : grid) thetas.push_back(radians(d));
    t.columns = {"theta_deg", "V_raw", "V_pure_same", "V_pure_opposite"};
    const auto rows = polarization_bounds(thetas, base_c, noise, workers);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      t.rows.push_back({grid[i], rows[i].raw, rows[i].pure_same, rows[i].pure_opposite});
    }
  } else if (axis == "g2") {
    const double c = read_overlap(f);
    f.finish();
    t.columns = {"g2", "V_raw", "V_pure", "improvement"};
    std::vector<Visibilities> out(grid.size());
    parallel_for(grid.size(), workers,
                 [&](std::size_t i) { out[i] = multiphoton_visibility(c, grid[i], noise); });
    for (std::size_t i = 0; i < grid.size(); ++i) {
      t.rows.push_back({grid[i], out[i].raw, out[i].pure, out[i].improvement()});
    }
  } else {
    throw ConfigError("field \"sweep\" must be raw_visibility, r1, r2, r_final, theta_deg or g2");
  }
  return t;
}

Table mc_dephasing(const ordered_json& config, const Globals& g) {
  if (!g.seed) throw ConfigError("mc-dephasing needs --seed");
  const Fields f(config, "");
  DephasingParams p;
  p.gamma = f.number("gamma", 1.0);
  p.gamma_d = f.number("gamma_d");
  if (f.has("deltas")) p.deltas = f.numbers("deltas");
  const long long photons = f.integer("photons", 4);
  const long long samples = f.integer("samples", 10000);
  WavepacketGrid grid;
  grid.dt = f.number("dt", 0.0);
  grid.horizon = f.number("horizon", 0.0);
  grid.workers = g.workers;
  f.finish();
  if (photons < 4) throw ConfigError("field \"photons\" must be at least 4");
  if (samples < 2) throw ConfigError("field \"samples\" must be at least 2");

  const auto draws = sample_dephased_overlaps(p, static_cast<int>(photons),
                                              static_cast<int>(samples), *g.seed, grid);
  const MomentEstimate e = estimate_moments(draws);
  const double x = p.ratio();
  const bool closed = p.deltas.empty();

  Table t;
  t.command = "mc-dephasing";
  t.input = config;
  t.notes = {{"seed", std::to_string(*g.seed)}, {"x", std::to_string(x)}};
  t.columns = {"quantity", "estimate", "standard_error", "closed_form"};
  const Cell none;
  t.rows.push_back({std::string("pair"), e.mean.pair, e.standard_error.pair,
                    closed ? Cell(1.0 / (1.0 + x)) : none});
  t.rows.push_back({std::string("triple"), e.mean.triple, e.standard_error.triple, none});
  t.rows.push_back({std::string("quad"), e.mean.quad, e.standard_error.quad, none});
  t.rows.push_back({std::string("triple_imag"), e.triple_imag, none, none});
  t.rows.push_back({std::string("quad_imag"), e.quad_imag, none, none});
  t.rows.push_back({std::string("purified"), e.purified, e.purified_se,
                    closed ? Cell(pd_purified(x)) : none});
  return t;
}

Table fit_counts(const FitFlags& flags, const Globals& g) {
  if (flags.counts.empty() == flags.histogram.empty()) {
    throw ConfigError("fit needs exactly one of --counts or --histogram");
  }
  SetupGeometry geometry;
  geometry.demux_split = flags.demux;
  geometry.split_bs_reflectivity = flags.split;
  if (flags.mode == "pure") {
    geometry.mode = SetupMode::kPurified;
    if (!flags.v_raw) throw ConfigError("fit --mode pure needs --v-raw from a raw fit");
  } else if (flags.v_raw) {
    throw ConfigError("--v-raw only applies to --mode pure");
  }
  if (flags.mc_resamples > 0 && !g.seed) throw ConfigError("--mc-resamples needs --seed");
  const double rate = flags.rate.value_or(10e6);
  const double time = flags.time.value_or(geometry.mode == SetupMode::kRaw ? 30.0 : 800.0);

  std::vector<DataRow> peaks;
  if (!flags.counts.empty()) {
    peaks = read_two_column_file(flags.counts);
  } else {
    peaks = histogram_to_peaks(read_two_column_file(flags.histogram), rate);
  }
  const PeakCounts counts = peaks_to_counts(peaks, rate, time);
  FitResult r = fit(counts, geometry, flags.v_raw);
  if (flags.mc_resamples > 0) {
    const Uncertainty u =
        mc_uncertainty(counts, geometry, flags.v_raw, flags.mc_resamples, *g.seed, g.workers);
    r.sigma_t = u.sigma_t;
    r.sigma_v = u.sigma_v;
  }

  Table t;
  t.command = "fit";
  t.input = ordered_json::object();
  t.input["file"] = flags.counts.empty() ? flags.histogram : flags.counts;
  t.input["file_kind"] = flags.counts.empty() ? "histogram" : "peaks";
  t.input["mode"] = flags.mode;
  if (flags.v_raw) t.input["v_raw"] = *flags.v_raw;
  t.input["repetition_rate"] = rate;
  t.input["integration_time"] = time;
  t.input["demux_split"] = flags.demux;
  t.input["split_bs_reflectivity"] = flags.split;
  t.input["mc_resamples"] = flags.mc_resamples;
  if (g.seed) t.input["seed"] = *g.seed;

  std::ostringstream report;
  write_fit_report(report, r);
  std::string line;
  std::istringstream lines(report.str());
  while (std::getline(lines, line)) {
    const auto eq = line.find(" = ");
    t.notes.emplace_back(line.substr(0, eq), line.substr(eq + 3));
  }
  t.columns = {"mode", "t", "V", "residual", "sigma_t", "sigma_V", "central", "side"};
  t.rows.push_back({flags.mode, r.t, r.v, r.residual, r.sigma_t, r.sigma_v, counts.central,
                    counts.side});
  return t;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Simulation and analysis of heralded photon purification"};
  app.require_subcommand(1);
  Globals g;
  FitFlags fit_flags;

  auto add_common = [&](CLI::App* sub, bool needs_config) {
    auto* opt = sub->add_option("--config", g.config, "JSON configuration file")
                    ->check(CLI::ExistingFile);
    if (needs_config) opt->required();
    sub->add_option("--out", g.out, "write results to this file instead of stdout");
    sub->add_option("--format", g.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--seed", g.seed, "seed for stochastic steps");
    sub->add_option("--workers", g.workers, "worker threads")->check(CLI::PositiveNumber);
  };
  CLI::App* sim = app.add_subcommand("simulate", "raw and purified visibility of one scenario");
  add_common(sim, true);
  CLI::App* swp = app.add_subcommand("sweep", "visibilities over a parameter grid");
  add_common(swp, true);
  CLI::App* mc = app.add_subcommand("mc-dephasing", "Monte Carlo overlap moments vs closed forms");
  add_common(mc, true);
  CLI::App* fit = app.add_subcommand("fit", "fit efficiency and visibility to peak counts");
  add_common(fit, false);
  fit->add_option("--counts", fit_flags.counts, "peak file: peak_index, counts")
      ->check(CLI::ExistingFile);
  fit->add_option("--histogram", fit_flags.histogram, "histogram file: time_bin_ns, counts")
      ->check(CLI::ExistingFile);
  fit->add_option("--mode", fit_flags.mode, "raw or pure")->check(CLI::IsMember({"raw", "pure"}));
  fit->add_option("--v-raw", fit_flags.v_raw, "raw visibility for --mode pure")
      ->check(CLI::Range(0.0, 1.0));
  fit->add_option("--rate", fit_flags.rate, "repetition rate in Hz (default 1e7)");
  fit->add_option("--time", fit_flags.time, "integration time in s (default 30 raw, 800 pure)");
  fit->add_option("--demux", fit_flags.demux, "demultiplexer splitting ratio")
      ->check(CLI::Range(0.0, 1.0));
  fit->add_option("--split", fit_flags.split, "reflectivity of the second splitter layer")
      ->check(CLI::Range(0.0, 1.0));
  fit->add_option("--mc-resamples", fit_flags.mc_resamples, "Poisson resamples for uncertainties")
      ->check(CLI::NonNegativeNumber);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    Table table;
    if (sim->parsed()) {
      table = simulate(load_config(g.config));
    } else if (swp->parsed()) {
      table = sweep(load_config(g.config), g.workers);
    } else if (mc->parsed()) {
      table = mc_dephasing(load_config(g.config), g);
    } else {
      table = fit_counts(fit_flags, g);
    }
    const std::string text = render(table, g.format == "json" ? Format::kJson : Format::kCsv);
    if (g.out.empty()) {
      out << text;
    } else {
      std::ofstream file(g.out, std::ios::binary);
      if (!file) throw ConfigError("cannot write " + g.out);
      file << text;
    }
    return kExitOk;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const InvalidArgument& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
}

}  // namespace purify::cli
