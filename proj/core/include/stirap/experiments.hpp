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

#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stirap/contour.hpp"
#include "stirap/dynamics.hpp"

namespace stirap {

/// Everything one simulation needs.
struct SimulationSetup {
  QutritParams qutrit;
  DriveSchedule drive;
  IntegratorConfig integrator;
  DensityMatrix initial;  ///< |0><0| by default
};

struct TimeDomainSummary {
  double max_p2 = 0.0;
  double t_at_max = 0.0;
  double max_p1 = 0.0;
  double max_p1_after = 0.0;  ///< max P1 over t > -td/2
  Populations final_populations{};
  InvariantReport invariants;
};

struct TimeDomainResult {
  Trajectory trajectory;
  TimeDomainSummary summary;
};

/// Phase-averaged trajectory over the schedule window plus summary numbers.
TimeDomainResult run_time_domain(const SimulationSetup& setup, int workers = 1);

enum class SweepParameter { delta_p, delta_s, omega0, td, pulse_area };

/// Registry names: "delta_p", "delta_s", "omega0", "td", "pulse_area".
std::string_view to_string(SweepParameter p);
std::optional<SweepParameter> parse_sweep_parameter(std::string_view name);
/// CSV column name including the unit, e.g. "delta_p_mhz", "td_ns", "pulse_area_pi".
std::string_view column_name(SweepParameter p);

/// Sets one parameter, given in config units (MHz, ns, or multiples of pi for
/// pulse_area). Changing td also rescales a default window; pulse_area sets
/// omega0 for the current td.
void apply_parameter(SimulationSetup& setup, SweepParameter p, double value);

struct SweepAxis {
  SweepParameter parameter = SweepParameter::delta_p;
  double start = 0.0;
  double stop = 0.0;
  double step = 1.0;

  /// start + k step for k = 0.. while <= stop (with 1e-9 step slack).
  std::vector<double> values() const;
  void validate() const;
};

enum class SweepMetric { final_p2, max_p2, max_p1 };
std::string_view to_string(SweepMetric m);
std::optional<SweepMetric> parse_sweep_metric(std::string_view name);

struct SweepSpec {
  SweepAxis axis1;
  std::optional<SweepAxis> axis2;
  SimulationSetup base;
  SweepMetric metric = SweepMetric::max_p2;

  void validate() const;
};

struct SweepResult {
  std::vector<SweepParameter> parameters;
  std::vector<double> axis1;
  std::vector<double> axis2;  ///< empty for one-dimensional sweeps
  std::vector<double> values;  ///< row-major, index i * max(1, axis2.size()) + j
  SweepMetric metric = SweepMetric::max_p2;
  std::string fingerprint;
  std::string timestamp;  ///< UTC, ISO 8601; not part of any CSV

  double at(std::size_t i, std::size_t j = 0) const;
};

/// Runs every grid point (phase-averaged) on a pool of `workers` threads.
SweepResult run_sweep(const SweepSpec& spec, int workers = 1);

/// Stable hex fingerprint of every numeric input of the sweep.
std::string fingerprint(const SweepSpec& spec);
std::string fingerprint(const SimulationSetup& setup);

struct Peak {
  std::size_t index = 0;
  double position = 0.0;  ///< quadratic-refined abscissa
  double value = 0.0;     ///< quadratic-refined height
  double prominence = 0.0;
  double fwhm = 0.0;
};

/// Local maxima of y(x), most prominent first. Positions and heights use a
/// three-point parabola around the discrete maximum. FWHM is the distance
/// between linearly interpolated crossings of half the peak height; on a side
/// where the curve does not fall that far before rising again, the lowest
/// point in between bounds the width.
std::vector<Peak> find_peaks(std::span<const double> x, std::span<const double> y);

struct PeakReport {
  Peak left;   ///< two-photon (Raman) resonance
  Peak right;  ///< single-tone two-photon line
  double expected_left_at = 0.0;  ///< -delta_s (MHz)
  bool two_photon_aligned = false;  ///< |left.position - expected| <= one grid step
};

/// Picks the two most prominent peaks of a P2-vs-delta_p curve (MHz) and
/// orders them by position. Throws NoPeakError if fewer than two exist.
PeakReport analyze_detuning_curve(std::span<const double> delta_p_mhz,
                                  std::span<const double> values, double delta_s_mhz);

struct DetuningSweepResult {
  SweepResult sweep;
  PeakReport peaks;
};

/// One-dimensional sweep of delta_p at the base delta_s.
DetuningSweepResult sweep_detuning(const SweepSpec& spec, int workers = 1);

struct ContourLevel {
  double level = 0.0;
  std::vector<Polyline> lines;
};

struct ContourResult {
  SweepResult sweep;
  std::vector<ContourLevel> contours;

  GridField field() const;
  /// Whether the contour at `level` encloses (axis1, axis2) = (x, y).
  bool encloses(double level, double x, double y) const;
};

/// Two-dimensional omega0 x td sweep of final P2 with iso-lines.
ContourResult contour_efficiency(const SweepSpec& spec, int workers = 1,
                                 std::vector<double> levels = {0.98, 0.99});

struct PiComparisonRow {
  double width = 0.0;         ///< s
  double area_over_pi = 0.0;  ///< omega * width / pi
  double two_level_transfer = 0.0;
  double pi_sequence_p2 = 0.0;  ///< final P2 of the 0->1, 1->2 sequence on the qutrit
  double stirap_omega0_scale = 1.0;
  double stirap_p2 = 0.0;  ///< final P2 of STIRAP with omega0 mis-set by the same factor
};

/// For each width: sequential pi pulses of Rabi frequency omega on the full
/// three-level model (qutrit parameters of `stirap`), the ideal two-level
/// transfer, and STIRAP with omega0 scaled by the same area error.
std::vector<PiComparisonRow> compare_pi_pulse(double omega, std::span<const double> widths,
                                              const SimulationSetup& stirap, int workers = 1);

/// Long format: one column per axis (config units) plus the metric.
void write_sweep_csv(std::ostream& out, const SweepResult& result);

/// `level,line,<axis1 column>,<axis2 column>`
void write_contour_csv(std::ostream& out, const ContourResult& result);

/// `width_ns,area_pi,two_level,pi_sequence_P2,stirap_scale,stirap_P2`
void write_pi_comparison_csv(std::ostream& out, std::span<const PiComparisonRow> rows);

}  // namespace stirap
