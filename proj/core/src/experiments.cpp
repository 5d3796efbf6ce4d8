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

#include "stirap/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <ctime>
#include <numbers>
#include <sstream>

#include "format.hpp"
#include "stirap/error.hpp"
#include "stirap/parallel.hpp"
#include "stirap/units.hpp"

namespace stirap {

namespace {

constexpr double kPi = std::numbers::pi;

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void canonical(std::ostringstream& os, const SimulationSetup& s) {
  const auto& q = s.qutrit;
  const auto& d = s.drive;
  const auto& c = s.integrator;
  auto num = [&](double v) { os << detail::format_number(v) << ';'; };
  for (double v : {q.f10, q.f21, q.lambda, q.gamma10, q.gamma21, q.gphi10, q.gphi20, q.gphi21}) num(v);
  for (double v : {d.omega0, d.td, d.delta_p, d.delta_s, d.phi, d.window_start(), d.window_end(),
                   d.pi_width, d.pi_gap}) {
    num(v);
  }
  os << static_cast<int>(d.order) << ';' << static_cast<int>(d.pi_shape) << ';';
  num(c.resolved_dt(d));
  os << c.record_every << ';' << c.phi_samples << ';' << c.renormalize << ';';
  const auto& m = s.initial.matrix();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      num(m(i, j).real());
      num(m(i, j).imag());
    }
  }
}

double metric_of(const Trajectory& traj, SweepMetric metric) {
  switch (metric) {
    case SweepMetric::final_p2: return traj.populations.back()[2];
    case SweepMetric::max_p2: return traj.max_population(2).value;
    case SweepMetric::max_p1: return traj.max_population(1).value;
  }
  return 0.0;
}

// Vertex of the parabola through three points.
std::pair<double, double> parabola_vertex(double x0, double y0, double x1, double y1, double x2,
                                          double y2) {
  const double d0 = (y1 - y0) / (x1 - x0);
  const double d1 = (y2 - y1) / (x2 - x1);
  const double a = (d1 - d0) / (x2 - x0);
  if (a >= 0.0) return {x1, y1};
  const double b = d0 - a * (x0 + x1);
  const double c = y0 - a * x0 * x0 - b * x0;
  const double xv = std::clamp(-b / (2.0 * a), x0, x2);
  return {xv, a * xv * xv + b * xv + c};
}

}  // namespace

TimeDomainResult run_time_domain(const SimulationSetup& setup, int workers) {
  TimeDomainResult result;
  result.trajectory =
      phase_average(setup.initial, setup.qutrit, setup.drive, setup.integrator, workers);
  const auto& traj = result.trajectory;
  auto& s = result.summary;
  const auto p2 = traj.max_population(2);
  s.max_p2 = p2.value;
  s.t_at_max = p2.time;
  s.max_p1 = traj.max_population(1).value;
  s.max_p1_after = traj.max_population(1, -0.5 * setup.drive.td).value;
  s.final_populations = traj.populations.back();
  s.invariants = traj.worst_invariants();
  return result;
}

std::string_view to_string(SweepParameter p) {
  switch (p) {
    case SweepParameter::delta_p: return "delta_p";
    case SweepParameter::delta_s: return "delta_s";
    case SweepParameter::omega0: return "omega0";
    case SweepParameter::td: return "td";
    case SweepParameter::pulse_area: return "pulse_area";
  }
  return "?";
}

std::optional<SweepParameter> parse_sweep_parameter(std::string_view name) {
  for (auto p : {SweepParameter::delta_p, SweepParameter::delta_s, SweepParameter::omega0,
                 SweepParameter::td, SweepParameter::pulse_area}) {
    if (name == to_string(p) || name == column_name(p)) return p;
  }
  return std::nullopt;
}

std::string_view column_name(SweepParameter p) {
  switch (p) {
    case SweepParameter::delta_p: return "delta_p_mhz";
    case SweepParameter::delta_s: return "delta_s_mhz";
    case SweepParameter::omega0: return "omega0_mhz";
    case SweepParameter::td: return "td_ns";
    case SweepParameter::pulse_area: return "pulse_area_pi";
  }
  return "?";
}

void apply_parameter(SimulationSetup& setup, SweepParameter p, double value) {
  auto& d = setup.drive;
  switch (p) {
    case SweepParameter::delta_p: d.delta_p = units::mhz_to_angular(value); break;
    case SweepParameter::delta_s: d.delta_s = units::mhz_to_angular(value); break;
    case SweepParameter::omega0: d.omega0 = units::mhz_to_angular(value); break;
    case SweepParameter::td: d.td = units::ns_to_s(value); break;
    case SweepParameter::pulse_area: d.omega0 = value * kPi / pulse_area(1.0, d.td); break;
  }
}

std::vector<double> SweepAxis::values() const {
  validate();
  const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = start + static_cast<double>(k) * step;
  return out;
}

void SweepAxis::validate() const {
  if (!(step > 0.0)) throw ValidationError("sweep axis step must be > 0");
  if (!(stop >= start)) throw ValidationError("sweep axis range is empty (stop < start)");
}

std::string_view to_string(SweepMetric m) {
  switch (m) {
    case SweepMetric::final_p2: return "final_P2";
    case SweepMetric::max_p2: return "max_P2";
    case SweepMetric::max_p1: return "max_P1";
  }
  return "?";
}

std::optional<SweepMetric> parse_sweep_metric(std::string_view name) {
  for (auto m : {SweepMetric::final_p2, SweepMetric::max_p2, SweepMetric::max_p1}) {
    if (name == to_string(m)) return m;
  }
  return std::nullopt;
}

void SweepSpec::validate() const {
  axis1.validate();
  if (axis2) {
    axis2->validate();
    if (axis2->parameter == axis1.parameter) {
      throw ValidationError("sweep axes must be different parameters");
    }
  }
  base.qutrit.validate();
  base.integrator.validate();
}

double SweepResult::at(std::size_t i, std::size_t j) const {
  return values[i * std::max<std::size_t>(1, axis2.size()) + j];
}

std::string fingerprint(const SimulationSetup& setup) {
  std::ostringstream os;
  canonical(os, setup);
  return detail::fnv1a_hex(os.str());
}

std::string fingerprint(const SweepSpec& spec) {
  std::ostringstream os;
  canonical(os, spec.base);
  auto axis = [&](const SweepAxis& a) {
    os << to_string(a.parameter) << ':' << detail::format_number(a.start) << ':'
       << detail::format_number(a.stop) << ':' << detail::format_number(a.step) << ';';
  };
  axis(spec.axis1);
  if (spec.axis2) axis(*spec.axis2);
  os << to_string(spec.metric);
  return detail::fnv1a_hex(os.str());
}

SweepResult run_sweep(const SweepSpec& spec, int workers) {
  spec.validate();
  SweepResult result;
  result.metric = spec.metric;
  result.parameters.push_back(spec.axis1.parameter);
  result.axis1 = spec.axis1.values();
  if (spec.axis2) {
    result.parameters.push_back(spec.axis2->parameter);
    result.axis2 = spec.axis2->values();
  }
  const std::size_t n2 = std::max<std::size_t>(1, result.axis2.size());
  const std::size_t total = result.axis1.size() * n2;
  result.values.assign(total, 0.0);
  result.fingerprint = fingerprint(spec);
  result.timestamp = utc_timestamp();

  parallel_for(total, workers, [&](std::size_t idx) {
    const std::size_t i = idx / n2;
    const std::size_t j = idx % n2;
    SimulationSetup setup = spec.base;
    // pulse_area depends on td, so it is applied last.
    std::vector<std::pair<SweepParameter, double>> assignments{{spec.axis1.parameter, result.axis1[i]}};
    if (spec.axis2) assignments.emplace_back(spec.axis2->parameter, result.axis2[j]);
    std::stable_sort(assignments.begin(), assignments.end(), [](const auto& a, const auto& b) {
      return (a.first != SweepParameter::pulse_area) && (b.first == SweepParameter::pulse_area);
    });
    for (const auto& [p, v] : assignments) apply_parameter(setup, p, v);
    const auto traj = phase_average(setup.initial, setup.qutrit, setup.drive, setup.integrator, 1);
    result.values[idx] = metric_of(traj, spec.metric);
  });
  return result;
}

std::vector<Peak> find_peaks(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ValidationError("find_peaks: x and y differ in length");
  const std::size_t n = y.size();
  std::vector<Peak> peaks;
  if (n < 3) return peaks;

  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (!(y[i] > y[i - 1] && y[i] >= y[i + 1])) continue;
    // Plateau: the maximum must eventually fall on the right.
    std::size_t r = i;
    while (r + 1 < n && y[r + 1] == y[i]) ++r;
    if (r + 1 == n) continue;

    Peak p;
    p.index = i;
    std::tie(p.position, p.value) =
        parabola_vertex(x[i - 1], y[i - 1], x[i], y[i], x[i + 1], y[i + 1]);

    double left_min = y[i];
    for (std::size_t k = i; k-- > 0;) {
      if (y[k] > y[i]) break;
      left_min = std::min(left_min, y[k]);
    }
    double right_min = y[i];
    for (std::size_t k = i + 1; k < n; ++k) {
      if (y[k] > y[i]) break;
      right_min = std::min(right_min, y[k]);
    }
    p.prominence = y[i] - std::max(left_min, right_min);

    const double half = 0.5 * p.value;
    double left_x = x[0];
    {
      std::size_t k = i;
      while (k > 0 && y[k - 1] <= y[k] && y[k - 1] > half) --k;
      if (k > 0 && y[k - 1] <= half) {
        left_x = x[k - 1] + (half - y[k - 1]) * (x[k] - x[k - 1]) / (y[k] - y[k - 1]);
      } else {
        left_x = x[k];
      }
    }
    double right_x = x[n - 1];
    {
      std::size_t k = r;
      while (k + 1 < n && y[k + 1] <= y[k] && y[k + 1] > half) ++k;
      if (k + 1 < n && y[k + 1] <= half) {
        right_x = x[k] + (y[k] - half) * (x[k + 1] - x[k]) / (y[k] - y[k + 1]);
      } else {
        right_x = x[k];
      }
    }
    p.fwhm = right_x - left_x;
    peaks.push_back(p);
    i = r;
  }
  std::stable_sort(peaks.begin(), peaks.end(),
                   [](const Peak& a, const Peak& b) { return a.prominence > b.prominence; });
  return peaks;
}

PeakReport analyze_detuning_curve(std::span<const double> delta_p_mhz,
                                  std::span<const double> values, double delta_s_mhz) {
  const auto peaks = find_peaks(delta_p_mhz, values);
  if (peaks.size() < 2) {
    throw NoPeakError("detuning curve has " + std::to_string(peaks.size()) +
                      " interior maxima; expected the two-photon and single-tone peaks");
  }
  PeakReport report;
  report.left = peaks[0];
  report.right = peaks[1];
  if (report.right.position < report.left.position) std::swap(report.left, report.right);
  report.expected_left_at = -delta_s_mhz;
  const double step = delta_p_mhz.size() > 1 ? delta_p_mhz[1] - delta_p_mhz[0] : 0.0;
  report.two_photon_aligned = std::abs(report.left.position - report.expected_left_at) <= step;
  return report;
}

DetuningSweepResult sweep_detuning(const SweepSpec& spec, int workers) {
  if (spec.axis1.parameter != SweepParameter::delta_p || spec.axis2) {
    throw ValidationError("detuning sweep needs a single delta_p axis");
  }
  DetuningSweepResult out;
  out.sweep = run_sweep(spec, workers);
  out.peaks = analyze_detuning_curve(out.sweep.axis1, out.sweep.values,
                                     units::angular_to_mhz(spec.base.drive.delta_s));
  return out;
}

GridField ContourResult::field() const { return {sweep.axis1, sweep.axis2, sweep.values}; }

bool ContourResult::encloses(double level, double x, double y) const {
  for (const auto& c : contours) {
    if (c.level == level) return contour_encloses(c.lines, field(), level, {x, y});
  }
  throw ValidationError("no contour extracted at level " + detail::format_number(level));
}

ContourResult contour_efficiency(const SweepSpec& spec, int workers, std::vector<double> levels) {
  if (!spec.axis2) throw ValidationError("contour sweep needs two axes");
  SweepSpec s = spec;
  s.metric = SweepMetric::final_p2;
  ContourResult out;
  out.sweep = run_sweep(s, workers);
  for (double level : levels) out.contours.push_back({level, marching_squares(out.field(), level)});
  return out;
}

std::vector<PiComparisonRow> compare_pi_pulse(double omega, std::span<const double> widths,
                                              const SimulationSetup& stirap, int workers) {
  std::vector<PiComparisonRow> rows(widths.size());
  parallel_for(widths.size(), workers, [&](std::size_t k) {
    auto& row = rows[k];
    row.width = widths[k];
    row.area_over_pi = omega * widths[k] / kPi;
    row.two_level_transfer = two_level_rabi_transfer(omega, widths[k]);

    IntegratorConfig cfg;
    cfg.phi_samples = stirap.integrator.phi_samples;
    cfg.record_every = stirap.integrator.record_every;
    const auto pair = pi_pulse_pair(omega, widths[k]);
    row.pi_sequence_p2 =
        phase_average(stirap.initial, stirap.qutrit, pair, cfg, 1).populations.back()[2];

    row.stirap_omega0_scale = row.area_over_pi;
    DriveSchedule drive = stirap.drive;
    drive.omega0 *= row.stirap_omega0_scale;
    row.stirap_p2 = phase_average(stirap.initial, stirap.qutrit, drive, stirap.integrator, 1)
                        .populations.back()[2];
  });
  return rows;
}

void write_sweep_csv(std::ostream& out, const SweepResult& r) {
  out << column_name(r.parameters.at(0));
  if (r.parameters.size() > 1) out << ',' << column_name(r.parameters[1]);
  out << ',' << to_string(r.metric) << '\n';
  const std::size_t n2 = std::max<std::size_t>(1, r.axis2.size());
  for (std::size_t i = 0; i < r.axis1.size(); ++i) {
    for (std::size_t j = 0; j < n2; ++j) {
      if (r.axis2.empty()) {
        detail::write_row(out, {r.axis1[i], r.at(i, j)});
      } else {
        detail::write_row(out, {r.axis1[i], r.axis2[j], r.at(i, j)});
      }
    }
  }
}

void write_contour_csv(std::ostream& out, const ContourResult& r) {
  out << "level,line," << column_name(r.sweep.parameters.at(0)) << ','
      << column_name(r.sweep.parameters.at(1)) << '\n';
  for (const auto& c : r.contours) {
    for (std::size_t l = 0; l < c.lines.size(); ++l) {
      for (const auto& p : c.lines[l]) {
        detail::write_row(out, {c.level, static_cast<double>(l), p.x, p.y});
      }
    }
  }
}

void write_pi_comparison_csv(std::ostream& out, std::span<const PiComparisonRow> rows) {
  out << "width_ns,area_pi,two_level,pi_sequence_P2,stirap_scale,stirap_P2\n";
  for (const auto& r : rows) {
    detail::write_row(out, {units::s_to_ns(r.width), r.area_over_pi, r.two_level_transfer,
                            r.pi_sequence_p2, r.stirap_omega0_scale, r.stirap_p2});
  }
}

}  // namespace stirap
