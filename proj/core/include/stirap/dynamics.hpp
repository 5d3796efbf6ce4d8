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
#include <optional>
#include <ostream>
#include <vector>

#include "stirap/error.hpp"
#include "stirap/pulses.hpp"
#include "stirap/qutrit.hpp"

namespace stirap {

struct IntegratorConfig {
  std::optional<double> dt;  ///< fixed RK4 step (s); default td/2000, or pi_width/2000 for pulse pairs
  int record_every = 10;     ///< record one state per this many steps; endpoints always recorded
  int phi_samples = 36;      ///< uniform phase grid for phase_average
  bool renormalize = false;  ///< symmetrize and rescale trace after every step

  /// Step actually used for `sched`.
  double resolved_dt(const DriveSchedule& sched) const;

  /// Throws ValidationError on dt <= 0, record_every < 1, phi_samples < 1.
  void validate() const;
};

/// Time-stamped samples of the evolution.
struct Trajectory {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
  std::vector<Populations> populations;

  std::size_t size() const { return times.size(); }
  bool empty() const { return times.empty(); }
  const DensityMatrix& final_state() const { return states.back(); }

  struct Extremum {
    double value = 0.0;
    double time = 0.0;
  };
  /// Largest population of `level` among samples with t >= t_from.
  Extremum max_population(int level, double t_from = -1e300) const;

  /// Worst invariant deviation over all recorded states.
  InvariantReport worst_invariants() const;
};

/// Raised when a population leaves [-1e-6, 1 + 1e-6] during integration.
class StepInstabilityError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Fixed-step classical RK4 on d rho/dt = -i[H(t), rho] + L(rho) over the
/// schedule window, at the schedule's single phase phi. Steps are aligned to
/// the schedule breakpoints.
Trajectory evolve(const DensityMatrix& rho0, const QutritParams& params,
                  const DriveSchedule& sched, const IntegratorConfig& cfg);

/// Average of `evolve` over phi_k = 2 pi k / N, k = 0..N-1 (cfg.phi_samples),
/// taken pointwise in time. The reduction runs in index order, so the result
/// does not depend on `workers`.
Trajectory phase_average(const DensityMatrix& rho0, const QutritParams& params,
                         const DriveSchedule& sched_base, const IntegratorConfig& cfg,
                         int workers = 1);

/// 0.5 * trace norm of (a - b).
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

struct ConvergenceReport {
  double dt = 0.0;
  /// max over recorded times of the trace distance between the dt and dt/2
  /// runs; +inf if either run was unstable
  double dt_halved_distance = 0.0;
  double tolerance = 1e-6;
  bool stable = true;
  bool ok = false;
};

/// Step-halving check of `evolve` at the schedule's phase.
ConvergenceReport convergence_check(const DensityMatrix& rho0, const QutritParams& params,
                                    const DriveSchedule& sched, const IntegratorConfig& cfg,
                                    double tolerance = 1e-6);

/// Reference propagator: n_steps equal sub-intervals, each propagated with the
/// exact exponential of the 9x9 Liouvillian frozen at the sub-interval
/// midpoint. The dissipator is assembled from jump operators rather than the
/// element-wise form used by `evolve`.
DensityMatrix oracle_evolve(const DensityMatrix& rho0, const QutritParams& params,
                            const DriveSchedule& sched, std::size_t n_steps);

/// Column-major vectorized Liouvillian (vec(rho) stacks columns) for a fixed
/// Hamiltonian, built from jump operators sqrt(G10)|0><1|, sqrt(G21)|1><2| and
/// level dephasing projectors.
Eigen::Matrix<Complex, 9, 9> liouvillian(const Matrix3c& hamiltonian, const QutritParams& params);

/// Final |1> population of a resonant two-level system, psi(0) = |0>, driven
/// by one pulse of Rabi frequency omega and width `width`, integrated by RK4
/// with `steps` steps.
double two_level_rabi_transfer(double omega, double width,
                               PulseShape shape = PulseShape::rectangular,
                               std::size_t steps = 4000);

/// `t_ns,P0,P1,P2`
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

/// `t_ns,re_00,im_00,re_01,im_01,...,re_22,im_22`
void write_state_csv(std::ostream& out, const Trajectory& traj);

}  // namespace stirap
