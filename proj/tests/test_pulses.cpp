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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "stirap/dynamics.hpp"
#include "stirap/pulses.hpp"
#include "stirap/units.hpp"

namespace stirap {
namespace {

using units::mhz_to_angular;
constexpr double kPi = std::numbers::pi;

double total_rabi(double t, double omega0, double td) {
  const auto e = envelope(t, omega0, td);
  return std::hypot(e.omega_p, e.omega_s);
}

double trapezoid_area(double omega0, double td, std::size_t n) {
  const double a = -3 * td, b = 3 * td, h = (b - a) / static_cast<double>(n);
  double sum = 0.5 * (total_rabi(a, omega0, td) + total_rabi(b, omega0, td));
  for (std::size_t k = 1; k < n; ++k) sum += total_rabi(a + static_cast<double>(k) * h, omega0, td);
  return sum * h;
}

// Width at half maximum of a single-humped sampled function.
template <typename F>
double sampled_fwhm(F f, double a, double b, std::size_t n) {
  double peak = 0.0;
  for (std::size_t k = 0; k <= n; ++k) peak = std::max(peak, f(a + (b - a) * k / n));
  double lo = b, hi = a;
  for (std::size_t k = 0; k <= n; ++k) {
    const double t = a + (b - a) * k / n;
    if (f(t) >= 0.5 * peak) {
      lo = std::min(lo, t);
      hi = std::max(hi, t);
    }
  }
  return hi - lo;
}

TEST(Envelope, EqualAtZero) {
  const double w0 = mhz_to_angular(42.8);
  const auto e = envelope(0.0, w0, 100e-9);
  EXPECT_NEAR(e.omega_p, w0 / std::sqrt(2.0), 1e-9 * w0);
  EXPECT_NEAR(e.omega_s, w0 / std::sqrt(2.0), 1e-9 * w0);
}

TEST(Envelope, StokesPrecedesPump) {
  const double w0 = 1.0, td = 1.0;
  EXPECT_GT(envelope(-td, w0, td).omega_s, envelope(-td, w0, td).omega_p);
  EXPECT_LT(envelope(td, w0, td).omega_s, envelope(td, w0, td).omega_p);
}

TEST(Envelope, NonNegativeAndBounded) {
  const double w0 = 3.0, td = 2.0;
  for (int k = -3000; k <= 3000; ++k) {
    const auto e = envelope(k * 1e-3 * td, w0, td);
    ASSERT_GE(e.omega_p, 0.0);
    ASSERT_GE(e.omega_s, 0.0);
    ASSERT_LE(std::hypot(e.omega_p, e.omega_s), w0 * (1 + 1e-15));
  }
}

TEST(Envelope, StokesHeightIsCheckedNotImposed) {
  // Dense scan of the Stokes envelope maximum; the value is reported, not forced.
  double best = 0.0;
  for (int k = 0; k <= 600000; ++k) best = std::max(best, envelope(-3.0 + k * 1e-5, 1.0, 1.0).omega_s);
  RecordProperty("stokes_height_over_omega0", std::to_string(best));
  EXPECT_GT(best, 0.9);
  EXPECT_LE(best, 1.0);
}

TEST(Envelope, SinglePulseWidthNearTwoTd) {
  const double td = 1.0;
  const double w = sampled_fwhm([&](double t) { return envelope(t, 1.0, td).omega_s; }, -3 * td, 3 * td,
                                600000);
  RecordProperty("stokes_fwhm_over_td", std::to_string(w));
  EXPECT_NEAR(w, 2.0 * td, 0.2 * td);
}

TEST(Envelope, MixingRatioStrictlyIncreasing) {
  double prev = -1.0;
  for (int k = -2999; k <= 2999; ++k) {
    const double t = k * 1e-3;
    const auto e = envelope(t, 1.0, 1.0);
    const double theta = std::atan2(e.omega_p, e.omega_s);
    ASSERT_GT(theta, prev);
    prev = theta;
  }
  EXPECT_LT(prev, kPi / 2);
}

TEST(Envelope, Symmetry) {
  for (int k = 0; k <= 3000; ++k) {
    const double t = k * 1e-3;
    const auto a = envelope(t, 1.0, 1.0), b = envelope(-t, 1.0, 1.0);
    ASSERT_NEAR(std::hypot(a.omega_p, a.omega_s), std::hypot(b.omega_p, b.omega_s), 1e-14);
    ASSERT_NEAR(a.omega_p, b.omega_s, 1e-14);
  }
}

TEST(DriveEnvelope, PumpFirstSwapsPulses) {
  DriveSchedule s;
  s.omega0 = 2.0;
  s.td = 1.0;
  s.order = PulseOrder::pump_first;
  const auto e = drive_envelope(s, -0.7);
  const auto ref = envelope(-0.7, 2.0, 1.0);
  EXPECT_DOUBLE_EQ(e.omega_p, ref.omega_s);
  EXPECT_DOUBLE_EQ(e.omega_s, ref.omega_p);
}

TEST(PulseArea, ZeroAmplitude) { EXPECT_EQ(pulse_area(0.0, 100e-9), 0.0); }

TEST(PulseArea, ReferenceValue) {
  const double a = pulse_area(mhz_to_angular(42.8), 100e-9);
  EXPECT_NEAR(a / kPi, 32.0, 1.0);
}

TEST(PulseArea, MatchesTrapezoidOracle) {
  const double w0 = mhz_to_angular(100.0), td = 50e-9;
  const double oracle = trapezoid_area(w0, td, 1'000'000);
  EXPECT_NEAR(pulse_area(w0, td), oracle, 1e-6 * oracle);
}

TEST(PulseArea, Linearity) {
  const double w0 = mhz_to_angular(42.8), td = 100e-9;
  const double base = pulse_area(w0, td);
  for (double c : {0.5, 2.0, 10.0}) EXPECT_NEAR(pulse_area(c * w0, td), c * base, 1e-9 * c * base);
}

TEST(PulseArea, TimeScaling) {
  const double w0 = mhz_to_angular(42.8), td = 100e-9;
  const double base = pulse_area(w0, td);
  for (double c : {0.1, 0.5, 3.0}) EXPECT_NEAR(pulse_area(w0, c * td), c * base, 1e-6 * c * base);
}

TEST(Adiabaticity, ReferenceParametersPass) {
  const double beat = mhz_to_angular(162.0);
  const auto r = adiabaticity_check(mhz_to_angular(42.8), 100e-9, beat);
  EXPECT_TRUE(r.area_ok);
  EXPECT_TRUE(r.detuning_ok);
  EXPECT_NEAR(r.area / kPi, 32.0, 1.0);
  // The combined envelope peaks at exactly omega0, so the ratio is 162 / 42.8.
  EXPECT_NEAR(r.peak_rabi, mhz_to_angular(42.8), 1e-6 * mhz_to_angular(42.8));
  EXPECT_NEAR(r.detuning_ratio, 162.0 / 42.8, 1e-6);
}

TEST(Adiabaticity, ZeroDriveFailsArea) {
  const auto r = adiabaticity_check(0.0, 100e-9, mhz_to_angular(162.0));
  EXPECT_FALSE(r.area_ok);
}

TEST(Adiabaticity, ShortPulseFailsArea) {
  const double w0 = mhz_to_angular(42.8);
  const auto r = adiabaticity_check(w0, 10e-9, mhz_to_angular(162.0));
  EXPECT_FALSE(r.area_ok);
  EXPECT_NEAR(r.area, 0.1 * pulse_area(w0, 100e-9), 1e-6 * r.area);
  EXPECT_NEAR(r.area / kPi, 3.2, 0.1);
}

TEST(Adiabaticity, StrongDriveFailsDetuning) {
  const auto r = adiabaticity_check(mhz_to_angular(150.0), 100e-9, mhz_to_angular(162.0));
  EXPECT_TRUE(r.area_ok);
  EXPECT_FALSE(r.detuning_ok);
  const auto lenient = adiabaticity_check(mhz_to_angular(150.0), 100e-9, mhz_to_angular(162.0), 1.0);
  EXPECT_TRUE(lenient.detuning_ok);
}

TEST(PiPulse, RectangularAreaIsPi) {
  const auto p = pi_pulse_schedule(mhz_to_angular(50.0), 10e-9, Transition::t01);
  EXPECT_NEAR(p.area(), kPi, 1e-15 * kPi);
}

TEST(PiPulse, RaisedCosineHasSameArea) {
  const double w = mhz_to_angular(50.0), width = 10e-9;
  const auto p = pi_pulse_schedule(w, width, Transition::t12, 0.0, PulseShape::raised_cosine);
  const std::size_t n = 100000;
  double sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) sum += p.rabi(p.start + (k + 0.5) * width / n);
  EXPECT_NEAR(sum * width / n, kPi, 1e-8);
}

TEST(PiPulse, PairTiming) {
  const double width = 10e-9, gap = 4e-9;
  const auto a = pi_pulse_schedule(1.0, width, Transition::t01, gap);
  const auto b = pi_pulse_schedule(1.0, width, Transition::t12, gap);
  EXPECT_NEAR(a.end(), -gap / 2, 1e-20);
  EXPECT_NEAR(b.start, gap / 2, 1e-20);
  EXPECT_FALSE(a.active(b.start));
  const auto sched = pi_pulse_pair(1.0, width, gap);
  EXPECT_EQ(sched.order, PulseOrder::pi_pulse_pair);
  EXPECT_NEAR(sched.window_start(), a.start, 1e-20);
  EXPECT_NEAR(sched.window_end(), b.end(), 1e-20);
}

TEST(PiPulse, ClosedFormFlopProbability) {
  EXPECT_DOUBLE_EQ(rabi_flop_probability(kPi), 1.0);
  EXPECT_NEAR(rabi_flop_probability(0.94 * kPi), 0.9911, 1e-4);
  EXPECT_NEAR(rabi_flop_probability(1.06 * kPi), 0.9911, 1e-4);
}

TEST(PiPulse, TwoLevelSimulationMatchesClosedForm) {
  const double w = mhz_to_angular(50.0);
  for (double frac : {0.25, 0.5, 0.94, 1.0, 1.06, 1.5, 2.0}) {
    const double width = frac * kPi / w;
    const double p = two_level_rabi_transfer(w, width);
    EXPECT_NEAR(p, std::pow(std::sin(frac * kPi / 2), 2), 1e-9) << "area " << frac << " pi";
  }
}

TEST(EnvelopeCsv, HeaderAndRows) {
  DriveSchedule s;
  s.omega0 = mhz_to_angular(42.8);
  std::ostringstream out;
  write_envelope_csv(out, s, 5);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "t_ns,omega_p_mhz,omega_s_mhz");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 5);
  EXPECT_EQ(out.str().find('\r'), std::string::npos);
}

}  // namespace
}  // namespace stirap
