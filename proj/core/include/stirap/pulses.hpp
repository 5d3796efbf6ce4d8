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

#include <cstddef>
#include <ostream>

#include "stirap/qutrit.hpp"

namespace stirap {

/// Counterintuitive STIRAP pair:
///   Omega_s(t) = Omega0 F(t) cos(pi f(t) / 2),  Omega_p(t) = Omega0 F(t) sin(pi f(t) / 2)
///   F(t) = exp(-(t / 2 td)^6),                   f(t) = 1 / (1 + exp(-4 t / td))
EnvelopeSample envelope(double t, double omega0, double td);

/// Envelope for any schedule order. For pi-pulse pairs `piece_time` selects
/// which pulse is active (half-open intervals), so a caller stepping across a
/// pulse edge can keep the drive of its current step; smooth orders ignore it.
EnvelopeSample drive_envelope(const DriveSchedule& sched, double t, double piece_time);
inline EnvelopeSample drive_envelope(const DriveSchedule& sched, double t) {
  return drive_envelope(sched, t, t);
}

/// Integral of sqrt(Omega_p^2 + Omega_s^2) over [-3 td, 3 td], by adaptive
/// Gauss-Kronrod quadrature (relative tolerance 1e-10).
double pulse_area(double omega0, double td);

struct AdiabaticityReport {
  double area = 0.0;            ///< rad
  double area_threshold = 0.0;  ///< 10 pi
  double peak_rabi = 0.0;       ///< max_t sqrt(Omega_p^2 + Omega_s^2), rad/s
  double detuning_ratio = 0.0;  ///< beat / peak_rabi
  double ratio_threshold = 3.0;
  bool area_ok = false;
  bool detuning_ok = false;

  bool ok() const { return area_ok && detuning_ok; }
};

/// Checks the two conditions for adiabatic following in the dark state: the
/// pulse area exceeds 10 pi and the tone beat dominates the peak Rabi
/// frequency by `ratio_threshold`.
AdiabaticityReport adiabaticity_check(double omega0, double td, double beat,
                                      double ratio_threshold = 3.0);

enum class Transition { t01, t12 };

/// One resonant single-tone pulse.
struct PiPulse {
  Transition target = Transition::t01;
  double omega = 0.0;  ///< Rabi frequency of the rectangular pulse (rad/s)
  double width = 0.0;  ///< s
  double start = 0.0;  ///< s
  PulseShape shape = PulseShape::rectangular;

  double end() const { return start + width; }
  bool active(double t) const { return t >= start && t < end(); }
  /// Rabi frequency at t, assuming the pulse is active. The raised-cosine
  /// shape peaks at 2 omega so both shapes have area omega * width.
  double rabi(double t) const;
  double area() const { return omega * width; }
};

/// Pulse for one leg of the sequential 0 -> 1 -> 2 transfer. Pulses are placed
/// so that a t01 and a t12 pulse built with the same width and gap sit back to
/// back around t = 0: t01 occupies [-width - gap/2, -gap/2), t12 occupies
/// [gap/2, gap/2 + width).
PiPulse pi_pulse_schedule(double omega, double width, Transition target, double gap = 0.0,
                          PulseShape shape = PulseShape::rectangular);

/// Full drive schedule for the two-pulse sequence (both tones resonant).
DriveSchedule pi_pulse_pair(double omega, double width, double gap = 0.0,
                            PulseShape shape = PulseShape::rectangular);

/// Closed-form Rabi transfer of an ideal resonant two-level system.
double rabi_flop_probability(double area);

/// Writes `t_ns,omega_p_mhz,omega_s_mhz` rows (Omega/2pi in MHz) for `samples`
/// uniformly spaced times covering the schedule window.
void write_envelope_csv(std::ostream& out, const DriveSchedule& sched, std::size_t samples);

}  // namespace stirap
