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

#include "stirap/pulses.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "format.hpp"
#include "stirap/error.hpp"
#include "stirap/units.hpp"

namespace stirap {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

EnvelopeSample envelope(double t, double omega0, double td) {
  const double x = t / (2.0 * td);
  const double x2 = x * x;
  const double F = std::exp(-(x2 * x2 * x2));
  const double f = 1.0 / (1.0 + std::exp(-4.0 * t / td));
  const double angle = 0.5 * kPi * f;
  return {t, omega0 * F * std::sin(angle), omega0 * F * std::cos(angle)};
}

double PiPulse::rabi(double t) const {
  if (shape == PulseShape::rectangular) return omega;
  const double phase = units::kTwoPi * (t - start) / width;
  return omega * (1.0 - std::cos(phase));
}

EnvelopeSample drive_envelope(const DriveSchedule& sched, double t, double piece_time) {
  switch (sched.order) {
    case PulseOrder::counterintuitive:
      return envelope(t, sched.omega0, sched.td);
    case PulseOrder::pump_first: {
      const auto e = envelope(t, sched.omega0, sched.td);
      return {t, e.omega_s, e.omega_p};
    }
    case PulseOrder::pi_pulse_pair: {
      const auto pump = pi_pulse_schedule(sched.omega0, sched.pi_width, Transition::t01,
                                          sched.pi_gap, sched.pi_shape);
      const auto stokes = pi_pulse_schedule(sched.omega0, sched.pi_width, Transition::t12,
                                            sched.pi_gap, sched.pi_shape);
      EnvelopeSample e{t, 0.0, 0.0};
      if (pump.active(piece_time)) e.omega_p = pump.rabi(t);
      if (stokes.active(piece_time)) e.omega_s = stokes.rabi(t);
      return e;
    }
  }
  return {t, 0.0, 0.0};
}

double pulse_area(double omega0, double td) {
  if (!(td > 0.0)) throw ValidationError("pulse_area: td must be > 0");
  if (omega0 == 0.0) return 0.0;
  // Integrate in units of td so the quadrature sees an O(1) interval.
  auto integrand = [omega0](double u) {
    const auto e = envelope(u, omega0, 1.0);
    return std::hypot(e.omega_p, e.omega_s);
  };
  double error = 0.0;
  const double area = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      integrand, -3.0, 3.0, 20, 1e-12, &error);
  return area * td;
}

AdiabaticityReport adiabaticity_check(double omega0, double td, double beat,
                                      double ratio_threshold) {
  AdiabaticityReport r;
  r.area = pulse_area(omega0, td);
  r.area_threshold = 10.0 * kPi;
  r.ratio_threshold = ratio_threshold;

  constexpr int kSamples = 6001;  // odd, so t = 0 is on the grid
  double peak = 0.0;
  for (int k = 0; k < kSamples; ++k) {
    const double t = -3.0 * td + 6.0 * td * k / (kSamples - 1);
    const auto e = envelope(t, omega0, td);
    peak = std::max(peak, std::hypot(e.omega_p, e.omega_s));
  }
  r.peak_rabi = peak;
  r.detuning_ratio = peak > 0.0 ? beat / peak : std::numeric_limits<double>::infinity();
  r.area_ok = r.area > r.area_threshold;
  r.detuning_ok = r.detuning_ratio > ratio_threshold;
  return r;
}

PiPulse pi_pulse_schedule(double omega, double width, Transition target, double gap,
                          PulseShape shape) {
  if (!(width > 0.0)) throw ValidationError("pi_pulse_schedule: width must be > 0");
  PiPulse p;
  p.target = target;
  p.omega = omega;
  p.width = width;
  p.shape = shape;
  p.start = target == Transition::t01 ? -width - 0.5 * gap : 0.5 * gap;
  return p;
}

DriveSchedule pi_pulse_pair(double omega, double width, double gap, PulseShape shape) {
  DriveSchedule s;
  s.order = PulseOrder::pi_pulse_pair;
  s.omega0 = omega;
  s.pi_width = width;
  s.pi_gap = gap;
  s.pi_shape = shape;
  s.td = width;
  s.validate();
  return s;
}

double rabi_flop_probability(double area) {
  const double s = std::sin(0.5 * area);
  return s * s;
}

void write_envelope_csv(std::ostream& out, const DriveSchedule& sched, std::size_t samples) {
  samples = std::max<std::size_t>(samples, 2);
  const double a = sched.window_start();
  const double b = sched.window_end();
  out << "t_ns,omega_p_mhz,omega_s_mhz\n";
  for (std::size_t k = 0; k < samples; ++k) {
    const double t = a + (b - a) * static_cast<double>(k) / static_cast<double>(samples - 1);
    const auto e = drive_envelope(sched, t);
    detail::write_row(out, {units::s_to_ns(t), units::angular_to_mhz(e.omega_p),
                            units::angular_to_mhz(e.omega_s)});
  }
}

}  // namespace stirap
