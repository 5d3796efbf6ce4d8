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

#include <array>
#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace stirap {

using Complex = std::complex<double>;
using Matrix3c = Eigen::Matrix3cd;
using Vector3c = Eigen::Vector3cd;
using Matrix3r = Eigen::Matrix3d;

/// Level populations (P0, P1, P2).
using Populations = std::array<double, 3>;

/// Deviation of a state from the density-matrix invariants.
struct InvariantReport {
  double trace_error = 0.0;        ///< |Tr rho - 1|
  double hermiticity_error = 0.0;  ///< max |rho_ij - conj(rho_ji)|
  double min_eigenvalue = 0.0;     ///< smallest eigenvalue of the Hermitian part

  /// Merges two reports keeping the worst value of each field.
  InvariantReport worst(const InvariantReport& other) const;
};

/// State of the qutrit: a 3x3 complex matrix that should be Hermitian,
/// unit-trace and positive semidefinite. The invariants are measured, not
/// enforced, so integrator drift stays observable.
class DensityMatrix {
 public:
  /// Ground state |0><0|.
  DensityMatrix();
  explicit DensityMatrix(const Matrix3c& rho) : rho_(rho) {}

  static DensityMatrix basis(int level);
  static DensityMatrix pure(const Vector3c& psi);

  const Matrix3c& matrix() const { return rho_; }
  Complex operator()(int i, int j) const { return rho_(i, j); }

  Populations populations() const;
  double population(int level) const { return rho_(level, level).real(); }

  double trace_error() const;
  double hermiticity_error() const;
  double min_eigenvalue() const;
  InvariantReport invariants() const;

 private:
  Matrix3c rho_;
};

/// Ladder qutrit parameters. Frequencies in Hz, rates in 1/s. The defaults are
/// the measured phase-qutrit values (f10 = 5.555 GHz, f21 = 5.393 GHz,
/// T1(10) = 353 ns, T1(21) = 196 ns, Tphi(10) = 124 ns) with the pure dephasing
/// ratios gphi20 = 2 gphi10 and gphi21 = gphi10.
struct QutritParams {
  double f10 = 5.555e9;
  double f21 = 5.393e9;
  double lambda = 1.45;  ///< ratio of 1-2 to 0-1 dipole couplings; sqrt(2) for a weakly anharmonic ladder
  double gamma10 = 2.83e6;
  double gamma21 = 5.10e6;
  double gphi10 = 8.06e6;
  double gphi20 = 2.0 * 8.06e6;
  double gphi21 = 8.06e6;

  double omega10() const;
  double omega21() const;
  /// (f10 - f21) / f10
  double anharmonicity() const;

  /// Throws ValidationError unless f10 > f21 > 0, lambda > 0 and all rates >= 0.
  void validate() const;

  /// Builds parameters from lifetimes; pure dephasing rates of the 0-2 and 1-2
  /// coherences default to 2x and 1x the 0-1 rate.
  static QutritParams from_lifetimes(double f10, double f21, double t1_10, double t1_21,
                                     double tphi_10, double lambda = 1.45);
};

/// The measured phase qutrit.
QutritParams phase_qutrit();

/// Same device family with 100x longer coherence times (T1(10) = 35.3 us,
/// T1(21) = 19.6 us, Tphi(10) = 12.4 us) and relative anharmonicity 8% at
/// fixed f10.
QutritParams improved_qutrit();

enum class PulseOrder {
  counterintuitive,  ///< Stokes precedes pump
  pump_first,        ///< intuitive ordering, for comparison
  pi_pulse_pair,     ///< resonant pi pulse on 0-1 followed by one on 1-2
};

enum class PulseShape { rectangular, raised_cosine };

/// Drive parameters. Angular frequencies in rad/s, times in s.
///
/// For pi_pulse_pair, `omega0` is the Rabi frequency of each rectangular pulse
/// (peak/2 area-equivalent for raised cosine), `pi_width` the duration of each
/// pulse and `pi_gap` the idle time between them; the pair is centred on t = 0.
struct DriveSchedule {
  double omega0 = 0.0;
  double td = 100e-9;
  double delta_p = 0.0;
  double delta_s = 0.0;
  double phi = 0.0;
  std::optional<double> t_start;  ///< default -3 td (pulse pairs: start of first pulse)
  std::optional<double> t_end;    ///< default +3 td (pulse pairs: end of second pulse)
  PulseOrder order = PulseOrder::counterintuitive;
  double pi_width = 0.0;
  double pi_gap = 0.0;
  PulseShape pi_shape = PulseShape::rectangular;

  double window_start() const;
  double window_end() const;

  /// Ordered times where the drive may be discontinuous, including both ends
  /// of the window. Integrators align their steps to these.
  std::vector<double> breakpoints() const;

  /// Throws ValidationError on omega0 < 0, td <= 0, or a window not
  /// straddling t = 0.
  void validate() const;
};

/// Pump/Stokes envelope values at one instant (rad/s).
struct EnvelopeSample {
  double t = 0.0;
  double omega_p = 0.0;
  double omega_s = 0.0;
};

/// Frequency difference of the two tones, omega_p - omega_s
/// = (omega10 - omega21) - delta_p + delta_s.
double tone_beat(const QutritParams& params, const DriveSchedule& sched);

enum class CrossTerms { keep, drop };

/// Rotating-frame Hamiltonian of the two-tone driven ladder (rad/s).
/// Diagonal (0, dp, dp + ds); the 0-1 element is gp + gs e^{-i(beat t - phi)}
/// and the 1-2 element lambda (gp e^{i(beat t - phi)} + gs), with
/// gp = omega_p / 2 and gs = omega_s / (2 lambda). With CrossTerms::drop the
/// oscillating terms are removed, which reduces it to the Raman Hamiltonian.
Matrix3c build_hamiltonian(double t, const QutritParams& params, const DriveSchedule& sched,
                           const EnvelopeSample& env, CrossTerms cross = CrossTerms::keep);

/// Same, with the envelopes taken from the schedule.
Matrix3c build_hamiltonian(double t, const QutritParams& params, const DriveSchedule& sched,
                           CrossTerms cross = CrossTerms::keep);

/// Three-level Raman Hamiltonian: diagonal (0, dp, dp + ds), off-diagonals
/// omega_p/2 (0-1) and omega_s/2 (1-2).
Matrix3r build_raman_hamiltonian(double omega_p, double omega_s, double delta_p, double delta_s);

/// Relaxation and dephasing part of the master equation (1/s). Populations
/// cascade 2 -> 1 -> 0; coherences 01, 02, 12 decay at (G10 + gphi10)/2,
/// (G21 + gphi20)/2 and (G10 + G21 + gphi21)/2.
Matrix3c dissipator(const Matrix3c& rho, const QutritParams& params);
inline Matrix3c dissipator(const DensityMatrix& rho, const QutritParams& params) {
  return dissipator(rho.matrix(), params);
}

struct DarkStateInfo {
  double theta = 0.0;      ///< mixing angle, tan(theta) = omega_p / omega_s
  Vector3c amplitudes;     ///< (cos theta, 0, -sin theta)
  Eigen::Vector3d eigenvalues;  ///< of the Raman Hamiltonian, ascending (rad/s)
};

/// Dark state of the Raman Hamiltonian at two-photon resonance
/// (delta_s = -delta_p). Throws DegenerateInputError if both amplitudes are 0.
DarkStateInfo dark_state(double omega_p, double omega_s, double delta_p = 0.0);

}  // namespace stirap
