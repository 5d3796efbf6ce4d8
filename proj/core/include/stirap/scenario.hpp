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

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stirap/experiments.hpp"
#include "stirap/tomography.hpp"

namespace stirap {

// Config-file representation of a run. Frequencies are ordinary frequencies
// in MHz, times in ns (dt in ps), rates in 1/s. Physics types are derived on
// demand so a config survives a save/load cycle field-exactly.

struct QutritSettings {
  double f10_mhz = 5555.0;
  double f21_mhz = 5393.0;
  double lambda = 1.45;
  double gamma10_per_s = 2.83e6;
  double gamma21_per_s = 5.10e6;
  double gphi10_per_s = 8.06e6;
  double gphi20_per_s = 2.0 * 8.06e6;
  double gphi21_per_s = 8.06e6;

  bool operator==(const QutritSettings&) const = default;
};

struct DriveSettings {
  double omega0_mhz = 42.8;
  double td_ns = 100.0;
  double delta_p_mhz = 0.0;
  double delta_s_mhz = 0.0;
  double phi_rad = 0.0;
  std::optional<double> t_start_ns;
  std::optional<double> t_end_ns;
  PulseOrder order = PulseOrder::counterintuitive;
  double pi_width_ns = 10.0;
  double pi_gap_ns = 0.0;
  PulseShape pi_shape = PulseShape::rectangular;

  bool operator==(const DriveSettings&) const = default;
};

struct IntegratorSettings {
  std::optional<double> dt_ps;
  int record_every = 10;
  int phi_samples = 36;
  bool renormalize = false;

  bool operator==(const IntegratorSettings&) const = default;
};

struct AxisSettings {
  std::string name;
  double start = 0.0;
  double stop = 0.0;
  double step = 1.0;

  bool operator==(const AxisSettings&) const = default;
};

enum class SweepKind { detuning, contour, grid };

struct SweepSettings {
  SweepKind kind = SweepKind::grid;
  AxisSettings axis1;
  std::optional<AxisSettings> axis2;
  std::string metric = "max_P2";
  std::vector<double> levels{0.98, 0.99};

  bool operator==(const SweepSettings&) const = default;
};

struct Scenario {
  std::string name = "custom";
  QutritSettings qutrit;
  DriveSettings drive;
  IntegratorSettings integrator;
  std::optional<TomographyCalibration> calibration;
  std::optional<SweepSettings> sweep;
  std::map<std::string, std::string> labels;

  bool operator==(const Scenario&) const = default;

  QutritParams qutrit_params() const;
  DriveSchedule drive_schedule() const;
  IntegratorConfig integrator_config() const;
  SimulationSetup setup() const;

  /// Sweep spec from the sweep section; `coarse` multiplies every step by 4.
  /// Throws ConfigError if there is no sweep section or an axis name is unknown.
  SweepSpec sweep_spec(bool coarse = false) const;

  /// Throws ConfigError describing the first invalid field.
  void validate() const;
};

/// Compiled-in presets: paper-fig2, paper-fig3, paper-fig4, paper-fig4a,
/// paper-fig4b. Throws ConfigError for unknown names.
Scenario preset(std::string_view name);
std::vector<std::string> preset_names();

/// Strict JSON parsing: unknown keys and wrong types raise ConfigError.
Scenario scenario_from_json(std::string_view text);
/// Applies the keys present in `text` on top of `base` (a "preset" key, if
/// present, is ignored here).
void overlay_json(Scenario& base, std::string_view text);
std::string scenario_to_json(const Scenario& scenario);
Scenario load_scenario(const std::filesystem::path& path);

/// 16 hex digits of FNV-1a over the canonical JSON form.
std::string scenario_fingerprint(const Scenario& scenario);

}  // namespace stirap
