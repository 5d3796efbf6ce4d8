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

#include "stirap/qutrit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "stirap/error.hpp"
#include "stirap/pulses.hpp"
#include "stirap/units.hpp"

namespace stirap {

InvariantReport InvariantReport::worst(const InvariantReport& other) const {
  return {std::max(trace_error, other.trace_error),
          std::max(hermiticity_error, other.hermiticity_error),
          std::min(min_eigenvalue, other.min_eigenvalue)};
}

DensityMatrix::DensityMatrix() : rho_(Matrix3c::Zero()) { rho_(0, 0) = 1.0; }

DensityMatrix DensityMatrix::basis(int level) {
  if (level < 0 || level > 2) throw ValidationError("basis level must be 0, 1 or 2");
  Matrix3c m = Matrix3c::Zero();
  m(level, level) = 1.0;
  return DensityMatrix(m);
}

DensityMatrix DensityMatrix::pure(const Vector3c& psi) {
  const double norm = psi.norm();
  if (norm == 0.0) throw ValidationError("pure state needs a non-zero vector");
  const Vector3c v = psi / norm;
  return DensityMatrix(v * v.adjoint());
}

Populations DensityMatrix::populations() const {
  return {rho_(0, 0).real(), rho_(1, 1).real(), rho_(2, 2).real()};
}

double DensityMatrix::trace_error() const { return std::abs(rho_.trace() - Complex(1.0, 0.0)); }

double DensityMatrix::hermiticity_error() const {
  return (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
  const Matrix3c herm = 0.5 * (rho_ + rho_.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix3c> solver(herm, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

InvariantReport DensityMatrix::invariants() const {
  return {trace_error(), hermiticity_error(), min_eigenvalue()};
}

double QutritParams::omega10() const { return units::hz_to_angular(f10); }
double QutritParams::omega21() const { return units::hz_to_angular(f21); }
double QutritParams::anharmonicity() const { return (f10 - f21) / f10; }

void QutritParams::validate() const {
  std::ostringstream why;
  if (!(f21 > 0.0)) why << "f21 must be positive; ";
  if (!(f10 > f21)) why << "f10 must exceed f21; ";
  if (!(lambda > 0.0)) why << "lambda must be positive; ";
  for (double rate : {gamma10, gamma21, gphi10, gphi20, gphi21}) {
    if (!(rate >= 0.0) || !std::isfinite(rate)) {
      why << "rates must be finite and non-negative; ";
      break;
    }
  }
  if (const auto msg = why.str(); !msg.empty()) throw ValidationError("QutritParams: " + msg);
}

QutritParams QutritParams::from_lifetimes(double f10, double f21, double t1_10, double t1_21,
                                          double tphi_10, double lambda) {
  QutritParams p;
  p.f10 = f10;
  p.f21 = f21;
  p.lambda = lambda;
  p.gamma10 = 1.0 / t1_10;
  p.gamma21 = 1.0 / t1_21;
  p.gphi10 = 1.0 / tphi_10;
  p.gphi20 = 2.0 * p.gphi10;
  p.gphi21 = p.gphi10;
  return p;
}

QutritParams phase_qutrit() { return QutritParams{}; }

QutritParams improved_qutrit() {
  constexpr double f10 = 5.555e9;
  constexpr double alpha = 0.08;
  return QutritParams::from_lifetimes(f10, f10 * (1.0 - alpha), units::us_to_s(35.3),
                                      units::us_to_s(19.6), units::us_to_s(12.4));
}

double DriveSchedule::window_start() const {
  if (t_start) return *t_start;
  if (order == PulseOrder::pi_pulse_pair) return -pi_width - 0.5 * pi_gap;
  return -3.0 * td;
}

double DriveSchedule::window_end() const {
  if (t_end) return *t_end;
  if (order == PulseOrder::pi_pulse_pair) return pi_width + 0.5 * pi_gap;
  return 3.0 * td;
}

std::vector<double> DriveSchedule::breakpoints() const {
  const double a = window_start();
  const double b = window_end();
  std::vector<double> points{a};
  if (order == PulseOrder::pi_pulse_pair) {
    for (double edge : {-pi_width - 0.5 * pi_gap, -0.5 * pi_gap, 0.5 * pi_gap,
                        pi_width + 0.5 * pi_gap}) {
      if (edge > points.back() && edge < b) points.push_back(edge);
    }
  }
  points.push_back(b);
  return points;
}

void DriveSchedule::validate() const {
  if (!(omega0 >= 0.0)) throw ValidationError("DriveSchedule: omega0 must be >= 0");
  if (order == PulseOrder::pi_pulse_pair) {
    if (!(pi_width > 0.0)) throw ValidationError("DriveSchedule: pi_width must be > 0");
    if (!(pi_gap >= 0.0)) throw ValidationError("DriveSchedule: pi_gap must be >= 0");
  } else if (!(td > 0.0)) {
    throw ValidationError("DriveSchedule: td must be > 0");
  }
  if (!(window_start() < 0.0 && window_end() > 0.0)) {
    throw ValidationError("DriveSchedule: window must satisfy t_start < 0 < t_end");
  }
}

double tone_beat(const QutritParams& params, const DriveSchedule& sched) {
  return (params.omega10() - params.omega21()) - sched.delta_p + sched.delta_s;
}

Matrix3c build_hamiltonian(double t, const QutritParams& params, const DriveSchedule& sched,
                           const EnvelopeSample& env, CrossTerms cross) {
  const double gp = 0.5 * env.omega_p;
  const double gs = env.omega_s / (2.0 * params.lambda);
  const double lambda = params.lambda;

  Complex rot(0.0, 0.0);  // e^{i(beat t - phi)}
  if (cross == CrossTerms::keep) {
    const double angle = tone_beat(params, sched) * t - sched.phi;
    rot = Complex(std::cos(angle), std::sin(angle));
  }

  const Complex h01 = gp + gs * std::conj(rot);
  const Complex h12 = lambda * (gp * rot + gs);

  Matrix3c h;
  h << 0.0, h01, 0.0,
       std::conj(h01), sched.delta_p, h12,
       0.0, std::conj(h12), sched.delta_p + sched.delta_s;
  return h;
}

Matrix3c build_hamiltonian(double t, const QutritParams& params, const DriveSchedule& sched,
                           CrossTerms cross) {
  return build_hamiltonian(t, params, sched, drive_envelope(sched, t), cross);
}

Matrix3r build_raman_hamiltonian(double omega_p, double omega_s, double delta_p, double delta_s) {
  Matrix3r h;
  h << 0.0, 0.5 * omega_p, 0.0,
       0.5 * omega_p, delta_p, 0.5 * omega_s,
       0.0, 0.5 * omega_s, delta_p + delta_s;
  return h;
}

Matrix3c dissipator(const Matrix3c& rho, const QutritParams& p) {
  const double c01 = 0.5 * (p.gamma10 + p.gphi10);
  const double c02 = 0.5 * (p.gamma21 + p.gphi20);
  const double c12 = 0.5 * (p.gamma10 + p.gamma21 + p.gphi21);

  Matrix3c out;
  out(0, 0) = p.gamma10 * rho(1, 1);
  out(1, 1) = -p.gamma10 * rho(1, 1) + p.gamma21 * rho(2, 2);
  out(2, 2) = -p.gamma21 * rho(2, 2);
  out(0, 1) = -c01 * rho(0, 1);
  out(1, 0) = -c01 * rho(1, 0);
  out(0, 2) = -c02 * rho(0, 2);
  out(2, 0) = -c02 * rho(2, 0);
  out(1, 2) = -c12 * rho(1, 2);
  out(2, 1) = -c12 * rho(2, 1);
  return out;
}

DarkStateInfo dark_state(double omega_p, double omega_s, double delta_p) {
  if (omega_p == 0.0 && omega_s == 0.0) {
    throw DegenerateInputError("dark state undefined when both drive amplitudes vanish");
  }
  DarkStateInfo info;
  info.theta = std::atan2(omega_p, omega_s);
  info.amplitudes = Vector3c(std::cos(info.theta), 0.0, -std::sin(info.theta));
  const Matrix3r h = build_raman_hamiltonian(omega_p, omega_s, delta_p, -delta_p);
  Eigen::SelfAdjointEigenSolver<Matrix3r> solver(h, Eigen::EigenvaluesOnly);
  info.eigenvalues = solver.eigenvalues();
  return info;
}

}  // namespace stirap
