// Copyright 2026 The stirap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "stirap/error.hpp"
#include "stirap/experiments.hpp"
#include "stirap/scenario.hpp"
#include "stirap/units.hpp"

namespace stirap::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct CommonOptions {
  std::string preset;
  std::string config;
  std::string out_dir = ".";
  int workers = 0;
  std::optional<int> phi_samples;
  std::optional<double> dt_ps;
  std::optional<double> omega0_mhz;
  std::optional<double> td_ns;
  std::optional<double> delta_p_mhz;
  std::optional<double> delta_s_mhz;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--preset", o.preset, "Built-in scenario (paper-fig2, paper-fig3, paper-fig4, paper-fig4a, paper-fig4b)");
  cmd->add_option("--config", o.config, "JSON scenario file; applied on top of --preset");
  cmd->add_option("--out-dir", o.out_dir, "Directory for output files");
  cmd->add_option("--workers", o.workers, "Worker threads (0 = hardware concurrency)");
  cmd->add_option("--phi-samples", o.phi_samples, "Phase-average grid size");
  cmd->add_option("--dt-ps", o.dt_ps, "RK4 step in ps");
  cmd->add_option("--omega0-mhz", o.omega0_mhz, "Peak Rabi parameter Omega0/2pi in MHz");
  cmd->add_option("--td-ns", o.td_ns, "Pulse time scale Td in ns");
  cmd->add_option("--delta-p-mhz", o.delta_p_mhz, "Pump detuning in MHz");
  cmd->add_option("--delta-s-mhz", o.delta_s_mhz, "Stokes detuning in MHz");
}

Scenario resolve_scenario(const CommonOptions& o) {
  Scenario sc;
  if (!o.preset.empty()) sc = preset(o.preset);
  if (!o.config.empty()) {
    std::ifstream in(o.config);
    if (!in) throw ConfigError("cannot open config file " + o.config);
    std::ostringstream text;
    text << in.rdbuf();
    if (o.preset.empty()) {
      sc = scenario_from_json(text.str());
    } else {
      overlay_json(sc, text.str());
    }
  }
  if (o.phi_samples) sc.integrator.phi_samples = *o.phi_samples;
  if (o.dt_ps) sc.integrator.dt_ps = *o.dt_ps;
  if (o.omega0_mhz) sc.drive.omega0_mhz = *o.omega0_mhz;
  if (o.td_ns) sc.drive.td_ns = *o.td_ns;
  if (o.delta_p_mhz) sc.drive.delta_p_mhz = *o.delta_p_mhz;
  if (o.delta_s_mhz) sc.drive.delta_s_mhz = *o.delta_s_mhz;
  sc.validate();
  return sc;
}

fs::path prepare_out_dir(const std::string& dir) {
  fs::path p(dir);
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec) throw ConfigError("cannot create output directory " + dir + ": " + ec.message());
  return p;
}

template <typename Writer>
fs::path write_file(const fs::path& path, Writer&& writer) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write " + path.string());
  writer(out);
  return path;
}

json invariants_json(const InvariantReport& r) {
  return {{"trace_error", r.trace_error},
          {"hermiticity_error", r.hermiticity_error},
          {"min_eigenvalue", r.min_eigenvalue}};
}

json peak_json(const Peak& p) {
  return {{"delta_p_mhz", p.position}, {"value", p.value}, {"fwhm_mhz", p.fwhm},
          {"prominence", p.prominence}};
}

AxisSettings parse_axis(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() != 4) throw ConfigError("axis must look like name:start:stop:step, got '" + text + "'");
  AxisSettings a;
  a.name = parts[0];
  try {
    a.start = std::stod(parts[1]);
    a.stop = std::stod(parts[2]);
    a.step = std::stod(parts[3]);
  } catch (const std::exception&) {
    throw ConfigError("axis bounds must be numbers: '" + text + "'");
  }
  if (!parse_sweep_parameter(a.name)) throw ConfigError("unknown sweep parameter '" + a.name + "'");
  return a;
}

// -- evolve ------------------------------------------------------------------

struct EvolveOptions {
  CommonOptions common;
  bool full_state = false;
};

int cmd_evolve(const EvolveOptions& o, std::ostream& out) {
  const Scenario sc = resolve_scenario(o.common);
  const auto fp = scenario_fingerprint(sc);
  const auto dir = prepare_out_dir(o.common.out_dir);
  const auto result = run_time_domain(sc.setup(), o.common.workers);
  const auto& s = result.summary;

  const auto traj_path = write_file(dir / ("trajectory_" + fp + ".csv"),
                                    [&](std::ostream& f) { write_trajectory_csv(f, result.trajectory); });
  if (o.full_state) {
    write_file(dir / ("states_" + fp + ".csv"),
               [&](std::ostream& f) { write_state_csv(f, result.trajectory); });
  }
  json summary = {{"fingerprint", fp},
                  {"scenario", json::parse(scenario_to_json(sc))},
                  {"max_P2", s.max_p2},
                  {"t_at_max_ns", units::s_to_ns(s.t_at_max)},
                  {"max_P1", s.max_p1},
                  {"max_P1_after_minus_half_td", s.max_p1_after},
                  {"final_populations", s.final_populations},
                  {"invariants", invariants_json(s.invariants)}};
  write_file(dir / ("summary_" + fp + ".json"), [&](std::ostream& f) { f << summary.dump(2) << '\n'; });

  out << std::setprecision(6);
  out << "scenario " << sc.name << " [" << fp << "]\n";
  out << "max_P2 = " << s.max_p2 << " at t = " << units::s_to_ns(s.t_at_max) << " ns\n";
  out << "final P0,P1,P2 = " << s.final_populations[0] << ", " << s.final_populations[1] << ", "
      << s.final_populations[2] << "\n";
  out << "max_P1 = " << s.max_p1 << "\n";
  out << "trajectory: " << traj_path.string() << "\n";
  return kOk;
}

// -- sweep -------------------------------------------------------------------

struct SweepOptions {
  CommonOptions common;
  bool coarse = false;
  std::string axis1;
  std::string axis2;
  std::string metric;
  std::string kind;
};

int cmd_sweep(const SweepOptions& o, std::ostream& out) {
  Scenario sc = resolve_scenario(o.common);
  if (!o.axis1.empty() || !o.axis2.empty() || !o.metric.empty() || !o.kind.empty()) {
    SweepSettings s = sc.sweep.value_or(SweepSettings{});
    if (!o.axis1.empty()) s.axis1 = parse_axis(o.axis1);
    if (!o.axis2.empty()) s.axis2 = parse_axis(o.axis2);
    if (!o.metric.empty()) s.metric = o.metric;
    if (!o.kind.empty()) {
      if (o.kind == "detuning") s.kind = SweepKind::detuning;
      else if (o.kind == "contour") s.kind = SweepKind::contour;
      else if (o.kind == "grid") s.kind = SweepKind::grid;
      else throw ConfigError("unknown sweep kind '" + o.kind + "'");
    }
    sc.sweep = s;
    sc.validate();
  }
  if (!sc.sweep) throw ConfigError("no sweep defined; use a sweep preset, a config sweep section or --axis1");

  const SweepSpec spec = sc.sweep_spec(o.coarse);
  const auto dir = prepare_out_dir(o.common.out_dir);
  json sidecar = {{"scenario", json::parse(scenario_to_json(sc))}, {"coarse", o.coarse}};
  sidecar["metric_note"] = "max_* metrics are maxima over the whole simulation window; final_P2 is P2 at t_end";

  SweepResult result;
  out << std::setprecision(6);
  switch (sc.sweep->kind) {
    case SweepKind::detuning: {
      const auto r = sweep_detuning(spec, o.common.workers);
      result = r.sweep;
      sidecar["peaks"] = {{"left", peak_json(r.peaks.left)},
                          {"right", peak_json(r.peaks.right)},
                          {"expected_left_at_mhz", r.peaks.expected_left_at},
                          {"two_photon_aligned", r.peaks.two_photon_aligned}};
      out << "left peak: " << r.peaks.left.value << " at delta_p = " << r.peaks.left.position
          << " MHz (fwhm " << r.peaks.left.fwhm << " MHz)\n";
      out << "right peak: " << r.peaks.right.value << " at delta_p = " << r.peaks.right.position
          << " MHz (fwhm " << r.peaks.right.fwhm << " MHz)\n";
      out << "two-photon resonance at -delta_s = " << r.peaks.expected_left_at << " MHz: "
          << (r.peaks.two_photon_aligned ? "aligned" : "NOT aligned") << "\n";
      break;
    }
    case SweepKind::contour: {
      const auto r = contour_efficiency(spec, o.common.workers, sc.sweep->levels);
      result = r.sweep;
      write_file(dir / ("contours_" + result.fingerprint + ".csv"),
                 [&](std::ostream& f) { write_contour_csv(f, r); });
      json levels = json::array();
      const double px = sc.drive.omega0_mhz;
      const double py = sc.drive.td_ns;
      const bool probe = spec.axis1.parameter == SweepParameter::omega0 && spec.axis2 &&
                         spec.axis2->parameter == SweepParameter::td;
      for (const auto& c : r.contours) {
        json entry = {{"level", c.level}, {"lines", c.lines.size()}};
        out << "level " << c.level << ": " << c.lines.size() << " line(s)";
        if (probe) {
          const bool inside = r.encloses(c.level, px, py);
          entry["encloses_base_point"] = inside;
          out << "; (" << px << " MHz, " << py << " ns) " << (inside ? "inside" : "outside");
        }
        out << "\n";
        levels.push_back(entry);
      }
      sidecar["contours"] = levels;
      break;
    }
    case SweepKind::grid:
      result = run_sweep(spec, o.common.workers);
      break;
  }
  sidecar["fingerprint"] = result.fingerprint;
  sidecar["timestamp"] = result.timestamp;
  sidecar["metric"] = std::string(to_string(result.metric));
  const auto csv = write_file(dir / ("sweep_" + result.fingerprint + ".csv"),
                              [&](std::ostream& f) { write_sweep_csv(f, result); });
  write_file(dir / ("sweep_" + result.fingerprint + ".json"),
             [&](std::ostream& f) { f << sidecar.dump(2) << '\n'; });
  out << "sweep: " << csv.string() << " (" << result.values.size() << " points)\n";
  return kOk;
}

// -- tomography --------------------------------------------------------------

struct TomographyOptions {
  CommonOptions common;
  std::string input;
};

int cmd_tomography(const TomographyOptions& o, std::ostream& out) {
  const Scenario sc = resolve_scenario(o.common);
  if (!sc.calibration) throw ConfigError("scenario has no calibration section");
  sc.calibration->validate();
  std::ifstream in(o.input);
  if (!in) throw ConfigError("cannot open input file " + o.input);
  const auto dir = prepare_out_dir(o.common.out_dir);
  const auto fp = scenario_fingerprint(sc);
  std::size_t rows = 0;
  const auto path = write_file(dir / ("tomography_" + fp + ".csv"), [&](std::ostream& f) {
    rows = invert_csv(in, f, *sc.calibration);
  });
  for (const auto& w : sc.calibration->warnings()) out << "warning: " << w << "\n";
  out << "inverted " << rows << " row(s): " << path.string() << "\n";
  return kOk;
}

// -- check -------------------------------------------------------------------

struct CheckOptions {
  CommonOptions common;
  double ratio_threshold = 3.0;
};

int cmd_check(const CheckOptions& o, std::ostream& out) {
  const Scenario sc = resolve_scenario(o.common);
  const auto setup = sc.setup();
  const double beat = tone_beat(setup.qutrit, setup.drive);
  const auto adia = adiabaticity_check(setup.drive.omega0, setup.drive.td, beat, o.ratio_threshold);
  const auto conv = convergence_check(setup.initial, setup.qutrit, setup.drive, setup.integrator);

  out << std::setprecision(4);
  out << "pulse area = " << adia.area / std::numbers::pi << " pi (threshold 10 pi): "
      << (adia.area_ok ? "PASS" : "FAIL") << "\n";
  out << "beat/peak Rabi = " << units::angular_to_mhz(beat) << " MHz / "
      << units::angular_to_mhz(adia.peak_rabi) << " MHz = " << adia.detuning_ratio
      << " (threshold " << adia.ratio_threshold << "): " << (adia.detuning_ok ? "PASS" : "FAIL")
      << "\n";
  out << "step halving at dt = " << units::s_to_ps(conv.dt) << " ps: distance "
      << std::scientific << conv.dt_halved_distance << std::defaultfloat << " (tolerance "
      << conv.tolerance << ")" << (conv.stable ? "" : ", unstable") << ": "
      << (conv.ok ? "PASS" : "FAIL") << "\n";
  const bool ok = adia.ok() && conv.ok;
  out << (ok ? "all checks PASS" : "some checks FAIL") << "\n";
  return ok ? kOk : kCheckFailed;
}

// -- pulses ------------------------------------------------------------------

struct PulsesOptions {
  CommonOptions common;
  std::size_t samples = 1201;
};

int cmd_pulses(const PulsesOptions& o, std::ostream& out) {
  const Scenario sc = resolve_scenario(o.common);
  const auto dir = prepare_out_dir(o.common.out_dir);
  const auto fp = scenario_fingerprint(sc);
  const auto path = write_file(dir / ("pulses_" + fp + ".csv"), [&](std::ostream& f) {
    write_envelope_csv(f, sc.drive_schedule(), o.samples);
  });
  out << "envelopes: " << path.string() << "\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"STIRAP simulator for a ladder-type superconducting qutrit", "stirap"};
  app.require_subcommand(1);

  EvolveOptions evolve_opts;
  auto* evolve = app.add_subcommand("evolve", "Phase-averaged time-domain run");
  add_common(evolve, evolve_opts.common);
  evolve->add_flag("--full-state", evolve_opts.full_state, "Also write all density-matrix elements");

  SweepOptions sweep_opts;
  auto* sweep = app.add_subcommand("sweep", "Detuning, contour or generic parameter sweep");
  add_common(sweep, sweep_opts.common);
  sweep->add_flag("--coarse", sweep_opts.coarse, "Use 4x coarser axis steps");
  sweep->add_option("--axis1", sweep_opts.axis1, "name:start:stop:step");
  sweep->add_option("--axis2", sweep_opts.axis2, "name:start:stop:step");
  sweep->add_option("--metric", sweep_opts.metric, "final_P2 | max_P2 | max_P1");
  sweep->add_option("--kind", sweep_opts.kind, "detuning | contour | grid");

  TomographyOptions tomo_opts;
  auto* tomo = app.add_subcommand("tomography", "Invert measured tunneling probabilities");
  add_common(tomo, tomo_opts.common);
  tomo->add_option("--input", tomo_opts.input, "CSV with header pA,pB")->required();

  CheckOptions check_opts;
  auto* check = app.add_subcommand("check", "Adiabaticity and step-convergence checks");
  add_common(check, check_opts.common);
  check->add_option("--ratio-threshold", check_opts.ratio_threshold, "Minimum beat / peak Rabi ratio");

  PulsesOptions pulses_opts;
  auto* pulses = app.add_subcommand("pulses", "Dump the pump/Stokes envelopes as CSV");
  add_common(pulses, pulses_opts.common);
  pulses->add_option("--samples", pulses_opts.samples, "Number of time samples");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }

  try {
    if (evolve->parsed()) return cmd_evolve(evolve_opts, out);
    if (sweep->parsed()) return cmd_sweep(sweep_opts, out);
    if (tomo->parsed()) return cmd_tomography(tomo_opts, out);
    if (check->parsed()) return cmd_check(check_opts, out);
    if (pulses->parsed()) return cmd_pulses(pulses_opts, out);
  } catch (const CalibrationError& e) {
    err << "calibration error: " << e.what() << "\n";
    return kCalibrationError;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << "\n";
    return kNumericError;
  } catch (const NoPeakError& e) {
    err << "analysis error: " << e.what() << "\n";
    return kNumericError;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const ValidationError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kConfigError;
  }
  return kConfigError;
}

}  // namespace stirap::cli
