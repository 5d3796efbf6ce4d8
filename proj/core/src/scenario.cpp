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

#include "stirap/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "format.hpp"
#include "json.hpp"
#include "stirap/error.hpp"
#include "stirap/units.hpp"

namespace stirap {

namespace {

using nlohmann::json;

// -- enum names --------------------------------------------------------------

std::string order_name(PulseOrder o) {
  switch (o) {
    case PulseOrder::counterintuitive: return "counterintuitive";
    case PulseOrder::pump_first: return "pump-first";
    case PulseOrder::pi_pulse_pair: return "pi-pulse-pair";
  }
  return "?";
}

PulseOrder parse_order(const std::string& s) {
  for (auto o : {PulseOrder::counterintuitive, PulseOrder::pump_first, PulseOrder::pi_pulse_pair}) {
    if (s == order_name(o)) return o;
  }
  throw ConfigError("drive.order: unknown value '" + s + "'");
}

std::string shape_name(PulseShape s) {
  return s == PulseShape::rectangular ? "rectangular" : "raised-cosine";
}

PulseShape parse_shape(const std::string& s) {
  if (s == "rectangular") return PulseShape::rectangular;
  if (s == "raised-cosine") return PulseShape::raised_cosine;
  throw ConfigError("drive.pi_shape: unknown value '" + s + "'");
}

std::string kind_name(SweepKind k) {
  switch (k) {
    case SweepKind::detuning: return "detuning";
    case SweepKind::contour: return "contour";
    case SweepKind::grid: return "grid";
  }
  return "?";
}

SweepKind parse_kind(const std::string& s) {
  for (auto k : {SweepKind::detuning, SweepKind::contour, SweepKind::grid}) {
    if (s == kind_name(k)) return k;
  }
  throw ConfigError("sweep.kind: unknown value '" + s + "'");
}

// -- strict readers ----------------------------------------------------------

void require_object(const json& j, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
}

void reject_unknown(const json& j, const std::string& where, const std::set<std::string>& allowed) {
  for (const auto& [key, _] : j.items()) {
    if (!allowed.contains(key)) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

template <typename T>
void read(const json& j, const char* key, T& out, const std::string& where) {
  const auto it = j.find(key);
  if (it == j.end()) return;
  try {
    if constexpr (std::is_same_v<T, double>) {
      if (!it->is_number()) throw ConfigError("");
    } else if constexpr (std::is_same_v<T, int>) {
      if (!it->is_number_integer()) throw ConfigError("");
    } else if constexpr (std::is_same_v<T, bool>) {
      if (!it->is_boolean()) throw ConfigError("");
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!it->is_string()) throw ConfigError("");
    }
    out = it->get<T>();
  } catch (const std::exception&) {
    throw ConfigError(where + "." + key + ": wrong type");
  }
}

template <typename T>
void read_optional(const json& j, const char* key, std::optional<T>& out, const std::string& where) {
  if (!j.contains(key)) return;
  if (j.at(key).is_null()) {
    out.reset();
    return;
  }
  T value{};
  read(j, key, value, where);
  out = value;
}

std::array<double, 3> read_triple(const json& j, const char* key, const std::string& where) {
  const auto it = j.find(key);
  if (it == j.end()) throw ConfigError(where + "." + key + ": missing");
  if (!it->is_array() || it->size() != 3) {
    throw ConfigError(where + "." + key + ": expected an array of three numbers");
  }
  std::array<double, 3> out{};
  for (std::size_t i = 0; i < 3; ++i) {
    if (!(*it)[i].is_number()) throw ConfigError(where + "." + key + ": expected numbers");
    out[i] = (*it)[i].get<double>();
  }
  return out;
}

AxisSettings read_axis(const json& j, const std::string& where) {
  require_object(j, where);
  reject_unknown(j, where, {"name", "start", "stop", "step"});
  AxisSettings a;
  read(j, "name", a.name, where);
  read(j, "start", a.start, where);
  read(j, "stop", a.stop, where);
  read(j, "step", a.step, where);
  return a;
}

json axis_json(const AxisSettings& a) {
  return {{"name", a.name}, {"start", a.start}, {"stop", a.stop}, {"step", a.step}};
}

void overlay(Scenario& sc, const json& root) {
  require_object(root, "config");
  reject_unknown(root, "config",
                 {"preset", "name", "qutrit", "drive", "integrator", "calibration", "sweep", "labels"});
  read(root, "name", sc.name, "config");

  if (const auto it = root.find("qutrit"); it != root.end()) {
    const std::string w = "qutrit";
    require_object(*it, w);
    reject_unknown(*it, w, {"f10_mhz", "f21_mhz", "lambda", "gamma10_per_s", "gamma21_per_s",
                            "gphi10_per_s", "gphi20_per_s", "gphi21_per_s"});
    auto& q = sc.qutrit;
    read(*it, "f10_mhz", q.f10_mhz, w);
    read(*it, "f21_mhz", q.f21_mhz, w);
    read(*it, "lambda", q.lambda, w);
    read(*it, "gamma10_per_s", q.gamma10_per_s, w);
    read(*it, "gamma21_per_s", q.gamma21_per_s, w);
    read(*it, "gphi10_per_s", q.gphi10_per_s, w);
    read(*it, "gphi20_per_s", q.gphi20_per_s, w);
    read(*it, "gphi21_per_s", q.gphi21_per_s, w);
  }

  if (const auto it = root.find("drive"); it != root.end()) {
    const std::string w = "drive";
    require_object(*it, w);
    reject_unknown(*it, w, {"omega0_mhz", "td_ns", "delta_p_mhz", "delta_s_mhz", "phi_rad",
                            "t_start_ns", "t_end_ns", "order", "pi_width_ns", "pi_gap_ns",
                            "pi_shape"});
    auto& d = sc.drive;
    read(*it, "omega0_mhz", d.omega0_mhz, w);
    read(*it, "td_ns", d.td_ns, w);
    read(*it, "delta_p_mhz", d.delta_p_mhz, w);
    read(*it, "delta_s_mhz", d.delta_s_mhz, w);
    read(*it, "phi_rad", d.phi_rad, w);
    read_optional(*it, "t_start_ns", d.t_start_ns, w);
    read_optional(*it, "t_end_ns", d.t_end_ns, w);
    std::string text;
    if (it->contains("order")) {
      read(*it, "order", text, w);
      d.order = parse_order(text);
    }
    read(*it, "pi_width_ns", d.pi_width_ns, w);
    read(*it, "pi_gap_ns", d.pi_gap_ns, w);
    if (it->contains("pi_shape")) {
      read(*it, "pi_shape", text, w);
      d.pi_shape = parse_shape(text);
    }
  }

  if (const auto it = root.find("integrator"); it != root.end()) {
    const std::string w = "integrator";
    require_object(*it, w);
    reject_unknown(*it, w, {"dt_ps", "record_every", "phi_samples", "renormalize"});
    auto& c = sc.integrator;
    read_optional(*it, "dt_ps", c.dt_ps, w);
    read(*it, "record_every", c.record_every, w);
    read(*it, "phi_samples", c.phi_samples, w);
    read(*it, "renormalize", c.renormalize, w);
  }

  if (const auto it = root.find("calibration"); it != root.end()) {
    if (it->is_null()) {
      sc.calibration.reset();
    } else {
      const std::string w = "calibration";
      require_object(*it, w);
      reject_unknown(*it, w, {"pA", "pB", "note"});
      TomographyCalibration c;
      c.pulse_a = read_triple(*it, "pA", w);
      c.pulse_b = read_triple(*it, "pB", w);
      sc.calibration = c;
    }
  }

  if (const auto it = root.find("sweep"); it != root.end()) {
    if (it->is_null()) {
      sc.sweep.reset();
    } else {
      const std::string w = "sweep";
      require_object(*it, w);
      reject_unknown(*it, w, {"kind", "axis1", "axis2", "metric", "levels"});
      SweepSettings s = sc.sweep.value_or(SweepSettings{});
      std::string text;
      if (it->contains("kind")) {
        read(*it, "kind", text, w);
        s.kind = parse_kind(text);
      }
      if (it->contains("axis1")) s.axis1 = read_axis(it->at("axis1"), "sweep.axis1");
      if (it->contains("axis2")) {
        if (it->at("axis2").is_null()) {
          s.axis2.reset();
        } else {
          s.axis2 = read_axis(it->at("axis2"), "sweep.axis2");
        }
      }
      read(*it, "metric", s.metric, w);
      if (it->contains("levels")) {
        const auto& lv = it->at("levels");
        if (!lv.is_array()) throw ConfigError("sweep.levels: expected an array");
        s.levels.clear();
        for (const auto& v : lv) {
          if (!v.is_number()) throw ConfigError("sweep.levels: expected numbers");
          s.levels.push_back(v.get<double>());
        }
      }
      sc.sweep = s;
    }
  }

  if (const auto it = root.find("labels"); it != root.end()) {
    require_object(*it, "labels");
    for (const auto& [k, v] : it->items()) {
      if (!v.is_string()) throw ConfigError("labels." + k + ": expected a string");
      sc.labels[k] = v.get<std::string>();
    }
  }
}

// -- presets -----------------------------------------------------------------

Scenario fig2() {
  Scenario sc;
  sc.name = "paper-fig2";
  // Measured device: f10 = 5.555 GHz, f21 = 5.393 GHz (alpha ~ 2.9%),
  // T1(10) = 353 ns, T1(21) = 196 ns, Tphi(10) = 124 ns; lambda ~ 1.45.
  sc.qutrit = QutritSettings{};
  sc.drive.omega0_mhz = 42.8;
  sc.drive.td_ns = 100.0;
  sc.calibration = TomographyCalibration::demo();
  sc.labels["description"] = "resonant STIRAP on the measured phase qutrit";
  sc.labels["calibration"] = "synthetic except p0A, p0B, p1B";
  return sc;
}

Scenario fig3() {
  Scenario sc = fig2();
  sc.name = "paper-fig3";
  sc.drive.delta_s_mhz = 20.0;
  SweepSettings s;
  s.kind = SweepKind::detuning;
  s.axis1 = {"delta_p", -60.0, 120.0, 1.0};
  s.metric = "max_P2";
  sc.sweep = s;
  sc.labels["description"] = "max_t P2 versus pump detuning at fixed Stokes detuning";
  sc.labels["metric_note"] = "maximum over the simulation window";
  return sc;
}

Scenario fig4() {
  Scenario sc = fig2();
  sc.name = "paper-fig4";
  // Coherence times x100 and alpha = 8% at fixed f10.
  sc.qutrit.f21_mhz = 5555.0 * (1.0 - 0.08);
  sc.qutrit.gamma10_per_s = 1.0 / 35.3e-6;
  sc.qutrit.gamma21_per_s = 1.0 / 19.6e-6;
  sc.qutrit.gphi10_per_s = 1.0 / 12.4e-6;
  sc.qutrit.gphi20_per_s = 2.0 / 12.4e-6;
  sc.qutrit.gphi21_per_s = 1.0 / 12.4e-6;
  sc.drive.omega0_mhz = 100.0;
  sc.drive.td_ns = 50.0;
  sc.labels["description"] = "improved-coherence qutrit, near-unit transfer";
  return sc;
}

Scenario fig4a() {
  Scenario sc = fig4();
  sc.name = "paper-fig4a";
  SweepSettings s;
  s.kind = SweepKind::contour;
  s.axis1 = {"omega0", 20.0, 400.0, 10.0};
  s.axis2 = AxisSettings{"td", 10.0, 200.0, 5.0};
  s.metric = "final_P2";
  sc.sweep = s;
  sc.labels["description"] = "final P2 over the omega0 x td plane";
  return sc;
}

}  // namespace

QutritParams Scenario::qutrit_params() const {
  QutritParams p;
  p.f10 = qutrit.f10_mhz * 1e6;
  p.f21 = qutrit.f21_mhz * 1e6;
  p.lambda = qutrit.lambda;
  p.gamma10 = qutrit.gamma10_per_s;
  p.gamma21 = qutrit.gamma21_per_s;
  p.gphi10 = qutrit.gphi10_per_s;
  p.gphi20 = qutrit.gphi20_per_s;
  p.gphi21 = qutrit.gphi21_per_s;
  return p;
}

DriveSchedule Scenario::drive_schedule() const {
  DriveSchedule d;
  d.omega0 = units::mhz_to_angular(drive.omega0_mhz);
  d.td = units::ns_to_s(drive.td_ns);
  d.delta_p = units::mhz_to_angular(drive.delta_p_mhz);
  d.delta_s = units::mhz_to_angular(drive.delta_s_mhz);
  d.phi = drive.phi_rad;
  if (drive.t_start_ns) d.t_start = units::ns_to_s(*drive.t_start_ns);
  if (drive.t_end_ns) d.t_end = units::ns_to_s(*drive.t_end_ns);
  d.order = drive.order;
  d.pi_width = units::ns_to_s(drive.pi_width_ns);
  d.pi_gap = units::ns_to_s(drive.pi_gap_ns);
  d.pi_shape = drive.pi_shape;
  return d;
}

IntegratorConfig Scenario::integrator_config() const {
  IntegratorConfig c;
  if (integrator.dt_ps) c.dt = units::ps_to_s(*integrator.dt_ps);
  c.record_every = integrator.record_every;
  c.phi_samples = integrator.phi_samples;
  c.renormalize = integrator.renormalize;
  return c;
}

SimulationSetup Scenario::setup() const {
  return {qutrit_params(), drive_schedule(), integrator_config(), DensityMatrix{}};
}

SweepSpec Scenario::sweep_spec(bool coarse) const {
  if (!sweep) throw ConfigError("scenario '" + name + "' has no sweep section");
  const double factor = coarse ? 4.0 : 1.0;
  auto axis = [&](const AxisSettings& a, const char* where) {
    const auto p = parse_sweep_parameter(a.name);
    if (!p) throw ConfigError(std::string(where) + ": unknown sweep parameter '" + a.name + "'");
    return SweepAxis{*p, a.start, a.stop, a.step * factor};
  };
  SweepSpec spec;
  spec.axis1 = axis(sweep->axis1, "sweep.axis1");
  if (sweep->axis2) spec.axis2 = axis(*sweep->axis2, "sweep.axis2");
  const auto metric = parse_sweep_metric(sweep->metric);
  if (!metric) throw ConfigError("sweep.metric: unknown metric '" + sweep->metric + "'");
  spec.metric = *metric;
  spec.base = setup();
  try {
    spec.validate();
  } catch (const ValidationError& e) {
    throw ConfigError(e.what());
  }
  return spec;
}

void Scenario::validate() const {
  try {
    qutrit_params().validate();
    const auto d = drive_schedule();
    d.validate();
    const auto c = integrator_config();
    c.validate();
    if (c.dt && d.order != PulseOrder::pi_pulse_pair && *c.dt > d.td / 500.0) {
      throw ValidationError("integrator.dt_ps must not exceed td/500");
    }
  } catch (const ValidationError& e) {
    throw ConfigError(e.what());
  }
  if (calibration) {
    for (const auto* row : {&calibration->pulse_a, &calibration->pulse_b}) {
      for (double p : *row) {
        if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("calibration: values must lie in [0, 1]");
      }
    }
  }
  if (sweep) {
    if (sweep->kind == SweepKind::contour && !sweep->axis2) {
      throw ConfigError("sweep: contour sweeps need axis2");
    }
    if (sweep->kind == SweepKind::detuning &&
        (sweep->axis2 || parse_sweep_parameter(sweep->axis1.name) != SweepParameter::delta_p)) {
      throw ConfigError("sweep: detuning sweeps take a single delta_p axis");
    }
    (void)sweep_spec(false);
  }
}

std::vector<std::string> preset_names() {
  return {"paper-fig2", "paper-fig3", "paper-fig4", "paper-fig4a", "paper-fig4b"};
}

Scenario preset(std::string_view name) {
  if (name == "paper-fig2") return fig2();
  if (name == "paper-fig3") return fig3();
  if (name == "paper-fig4") return fig4();
  if (name == "paper-fig4a") return fig4a();
  if (name == "paper-fig4b") {
    Scenario sc = fig4();
    sc.name = "paper-fig4b";
    return sc;
  }
  throw ConfigError("unknown preset '" + std::string(name) + "'");
}

Scenario scenario_from_json(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  require_object(root, "config");
  Scenario sc;
  if (const auto it = root.find("preset"); it != root.end()) {
    if (!it->is_string()) throw ConfigError("config.preset: expected a string");
    sc = preset(it->get<std::string>());
  }
  overlay(sc, root);
  return sc;
}

std::string scenario_to_json(const Scenario& sc) {
  json root;
  root["name"] = sc.name;
  const auto& q = sc.qutrit;
  root["qutrit"] = {{"f10_mhz", q.f10_mhz},
                    {"f21_mhz", q.f21_mhz},
                    {"lambda", q.lambda},
                    {"gamma10_per_s", q.gamma10_per_s},
                    {"gamma21_per_s", q.gamma21_per_s},
                    {"gphi10_per_s", q.gphi10_per_s},
                    {"gphi20_per_s", q.gphi20_per_s},
                    {"gphi21_per_s", q.gphi21_per_s}};
  const auto& d = sc.drive;
  json drive = {{"omega0_mhz", d.omega0_mhz},   {"td_ns", d.td_ns},
                {"delta_p_mhz", d.delta_p_mhz}, {"delta_s_mhz", d.delta_s_mhz},
                {"phi_rad", d.phi_rad},         {"order", order_name(d.order)},
                {"pi_width_ns", d.pi_width_ns}, {"pi_gap_ns", d.pi_gap_ns},
                {"pi_shape", shape_name(d.pi_shape)}};
  if (d.t_start_ns) drive["t_start_ns"] = *d.t_start_ns;
  if (d.t_end_ns) drive["t_end_ns"] = *d.t_end_ns;
  root["drive"] = drive;
  const auto& c = sc.integrator;
  json integ = {{"record_every", c.record_every},
                {"phi_samples", c.phi_samples},
                {"renormalize", c.renormalize}};
  if (c.dt_ps) integ["dt_ps"] = *c.dt_ps;
  root["integrator"] = integ;
  if (sc.calibration) {
    root["calibration"] = {{"pA", sc.calibration->pulse_a}, {"pB", sc.calibration->pulse_b}};
  }
  if (sc.sweep) {
    const auto& s = *sc.sweep;
    json sw = {{"kind", kind_name(s.kind)},
               {"axis1", axis_json(s.axis1)},
               {"metric", s.metric},
               {"levels", s.levels}};
    if (s.axis2) sw["axis2"] = axis_json(*s.axis2);
    root["sweep"] = sw;
  }
  root["labels"] = sc.labels;
  return root.dump(2);
}

void overlay_json(Scenario& base, std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  overlay(base, root);
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return scenario_from_json(buf.str());
}

std::string scenario_fingerprint(const Scenario& scenario) {
  return detail::fnv1a_hex(scenario_to_json(scenario));
}

}  // namespace stirap
