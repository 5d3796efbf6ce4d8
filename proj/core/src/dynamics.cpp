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

#include "stirap/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "format.hpp"
#include "stirap/error.hpp"
#include "stirap/parallel.hpp"
#include "stirap/units.hpp"

namespace stirap {

namespace {

constexpr double kPopulationSlack = 1e-6;
constexpr Complex kMinusI(0.0, -1.0);

// d rho / dt for the driven, damped ladder. `piece_time` pins the active
// pulse of piecewise drives to the current step.
Matrix3c master_rhs(double t, double piece_time, const Matrix3c& rho, const QutritParams& params,
                    const DriveSchedule& sched) {
  const auto env = drive_envelope(sched, t, piece_time);
  const Matrix3c h = build_hamiltonian(t, params, sched, env);
  return kMinusI * (h * rho - rho * h) + dissipator(rho, params);
}

void check_step(const Matrix3c& rho, double t, double dt) {
  for (int i = 0; i < 3; ++i) {
    const double p = rho(i, i).real();
    if (!std::isfinite(p) || p < -kPopulationSlack || p > 1.0 + kPopulationSlack) {
      throw StepInstabilityError("population P" + std::to_string(i) + " = " +
                                 detail::format_number(p) + " at t = " +
                                 detail::format_number(units::s_to_ns(t)) +
                                 " ns; step dt = " + detail::format_number(units::s_to_ps(dt)) +
                                 " ps is too large");
    }
  }
}

std::size_t steps_for(double length, double dt) {
  const double ratio = length / dt;
  const double nearest = std::round(ratio);
  if (std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, ratio)) {
    return std::max<std::size_t>(1, static_cast<std::size_t>(nearest));
  }
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(ratio)));
}

void record(Trajectory& traj, double t, const Matrix3c& rho) {
  traj.times.push_back(t);
  traj.states.emplace_back(rho);
  traj.populations.push_back(traj.states.back().populations());
}

}  // namespace

double IntegratorConfig::resolved_dt(const DriveSchedule& sched) const {
  if (dt) return *dt;
  if (sched.order == PulseOrder::pi_pulse_pair) return sched.pi_width / 2000.0;
  return sched.td / 2000.0;
}

void IntegratorConfig::validate() const {
  if (dt && !(*dt > 0.0)) throw ValidationError("IntegratorConfig: dt must be > 0");
  if (record_every < 1) throw ValidationError("IntegratorConfig: record_every must be >= 1");
  if (phi_samples < 1) throw ValidationError("IntegratorConfig: phi_samples must be >= 1");
}

Trajectory::Extremum Trajectory::max_population(int level, double t_from) const {
  Extremum best{-std::numeric_limits<double>::infinity(), 0.0};
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (times[k] < t_from) continue;
    const double p = populations[k][static_cast<std::size_t>(level)];
    if (p > best.value) best = {p, times[k]};
  }
  return best;
}

InvariantReport Trajectory::worst_invariants() const {
  InvariantReport worst{0.0, 0.0, std::numeric_limits<double>::infinity()};
  for (const auto& s : states) worst = worst.worst(s.invariants());
  return worst;
}

namespace {

// `refine` multiplies the step count of every segment, so refined grids nest exactly.
Trajectory evolve_steps(const DensityMatrix& rho0, const QutritParams& params,
                        const DriveSchedule& sched, const IntegratorConfig& cfg,
                        std::size_t refine) {
  params.validate();
  sched.validate();
  cfg.validate();

  const double dt_target = cfg.resolved_dt(sched);
  const auto points = sched.breakpoints();

  std::size_t total_steps = 0;
  for (std::size_t s = 0; s + 1 < points.size(); ++s) {
    total_steps += refine * steps_for(points[s + 1] - points[s], dt_target);
  }

  Trajectory traj;
  const std::size_t expected = total_steps / static_cast<std::size_t>(cfg.record_every) + 2;
  traj.times.reserve(expected);
  traj.states.reserve(expected);
  traj.populations.reserve(expected);

  Matrix3c rho = rho0.matrix();
  record(traj, points.front(), rho);

  std::size_t step = 0;
  for (std::size_t s = 0; s + 1 < points.size(); ++s) {
    const double a = points[s];
    const double b = points[s + 1];
    const std::size_t n = refine * steps_for(b - a, dt_target);
    const double h = (b - a) / static_cast<double>(n);

    for (std::size_t k = 0; k < n; ++k) {
      const double t = a + static_cast<double>(k) * h;
      const double mid = t + 0.5 * h;
      const double t_next = (k + 1 == n) ? b : a + static_cast<double>(k + 1) * h;

      const Matrix3c k1 = master_rhs(t, mid, rho, params, sched);
      const Matrix3c k2 = master_rhs(mid, mid, rho + (0.5 * h) * k1, params, sched);
      const Matrix3c k3 = master_rhs(mid, mid, rho + (0.5 * h) * k2, params, sched);
      const Matrix3c k4 = master_rhs(t_next, mid, rho + h * k3, params, sched);
      rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

      if (cfg.renormalize) {
        rho = 0.5 * (rho + rho.adjoint()).eval();
        rho /= rho.trace().real();
      }
      check_step(rho, t_next, h);

      ++step;
      if (step % static_cast<std::size_t>(cfg.record_every) == 0 || step == total_steps) {
        record(traj, t_next, rho);
      }
    }
  }
  return traj;
}

}  // namespace

Trajectory evolve(const DensityMatrix& rho0, const QutritParams& params,
                  const DriveSchedule& sched, const IntegratorConfig& cfg) {
  return evolve_steps(rho0, params, sched, cfg, 1);
}

Trajectory phase_average(const DensityMatrix& rho0, const QutritParams& params,
                         const DriveSchedule& sched_base, const IntegratorConfig& cfg,
                         int workers) {
  cfg.validate();
  const auto n = static_cast<std::size_t>(cfg.phi_samples);

  auto run_one = [&](std::size_t k) {
    DriveSchedule sched = sched_base;
    sched.phi = units::kTwoPi * static_cast<double>(k) / static_cast<double>(n);
    try {
      return evolve(rho0, params, sched, cfg);
    } catch (const NumericalError& e) {
      throw NumericalError("phase sample " + std::to_string(k) + " (phi = " +
                           detail::format_number(sched.phi) + " rad) failed: " + e.what());
    }
  };

  std::vector<Matrix3c> sum;
  Trajectory first;
  auto accumulate = [&](const Trajectory& traj) {
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += traj.states[i].matrix();
  };

  if (resolve_workers(workers) <= 1 || n == 1) {
    for (std::size_t k = 0; k < n; ++k) {
      auto traj = run_one(k);
      if (k == 0) {
        sum.reserve(traj.size());
        for (const auto& s : traj.states) sum.push_back(s.matrix());
        first = std::move(traj);
      } else {
        accumulate(traj);
      }
    }
  } else {
    std::vector<Trajectory> runs(n);
    parallel_for(n, workers, [&](std::size_t k) { runs[k] = run_one(k); });
    for (const auto& s : runs[0].states) sum.push_back(s.matrix());
    for (std::size_t k = 1; k < n; ++k) accumulate(runs[k]);
    first = std::move(runs[0]);
  }

  Trajectory avg;
  avg.times = std::move(first.times);
  avg.states.reserve(sum.size());
  avg.populations.reserve(sum.size());
  const double inv = 1.0 / static_cast<double>(n);
  for (auto& m : sum) {
    avg.states.emplace_back(n == 1 ? m : (m * inv).eval());
    avg.populations.push_back(avg.states.back().populations());
  }
  return avg;
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  const Matrix3c diff = a.matrix() - b.matrix();
  const Matrix3c herm = 0.5 * (diff + diff.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix3c> solver(herm, Eigen::EigenvaluesOnly);
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

ConvergenceReport convergence_check(const DensityMatrix& rho0, const QutritParams& params,
                                    const DriveSchedule& sched, const IntegratorConfig& cfg,
                                    double tolerance) {
  ConvergenceReport report;
  report.dt = cfg.resolved_dt(sched);
  report.tolerance = tolerance;

  IntegratorConfig fine = cfg;
  fine.record_every = 2 * cfg.record_every;

  Trajectory coarse_run;
  Trajectory fine_run;
  try {
    coarse_run = evolve(rho0, params, sched, cfg);
    fine_run = evolve_steps(rho0, params, sched, fine, 2);
  } catch (const NumericalError&) {
    report.stable = false;
    report.dt_halved_distance = std::numeric_limits<double>::infinity();
    report.ok = false;
    return report;
  }

  // The fine grid nests the coarse one, so shared sample times agree to rounding.
  double worst = 0.0;
  std::size_t j = 0;
  const double slack = 1e-9 * report.dt;
  for (std::size_t i = 0; i < coarse_run.size(); ++i) {
    while (j < fine_run.size() && fine_run.times[j] < coarse_run.times[i] - slack) ++j;
    if (j == fine_run.size()) break;
    if (std::abs(fine_run.times[j] - coarse_run.times[i]) <= slack) {
      worst = std::max(worst, trace_distance(coarse_run.states[i], fine_run.states[j]));
    }
  }
  worst = std::max(worst, trace_distance(coarse_run.final_state(), fine_run.final_state()));
  report.dt_halved_distance = worst;
  report.ok = worst < tolerance;
  return report;
}

double two_level_rabi_transfer(double omega, double width, PulseShape shape, std::size_t steps) {
  if (!(width > 0.0)) throw ValidationError("two_level_rabi_transfer: width must be > 0");
  steps = std::max<std::size_t>(steps, 1);
  PiPulse pulse;
  pulse.omega = omega;
  pulse.width = width;
  pulse.start = 0.0;
  pulse.shape = shape;

  using Vec2 = Eigen::Vector2cd;
  // i d psi/dt = (Omega(t)/2) sigma_x psi
  auto rhs = [&](double t, const Vec2& psi) {
    const double half = 0.5 * pulse.rabi(t);
    return Vec2(kMinusI * half * psi(1), kMinusI * half * psi(0));
  };
  Vec2 psi(1.0, 0.0);
  const double h = width / static_cast<double>(steps);
  for (std::size_t k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * h;
    const Vec2 k1 = rhs(t, psi);
    const Vec2 k2 = rhs(t + 0.5 * h, psi + 0.5 * h * k1);
    const Vec2 k3 = rhs(t + 0.5 * h, psi + 0.5 * h * k2);
    const Vec2 k4 = rhs(t + h, psi + h * k3);
    psi += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return std::norm(psi(1));
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  out << "t_ns,P0,P1,P2\n";
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const auto& p = traj.populations[k];
    detail::write_row(out, {units::s_to_ns(traj.times[k]), p[0], p[1], p[2]});
  }
}

void write_state_csv(std::ostream& out, const Trajectory& traj) {
  out << "t_ns";
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) out << ",re_" << i << j << ",im_" << i << j;
  }
  out << '\n';
  for (std::size_t k = 0; k < traj.size(); ++k) {
    out << detail::format_number(units::s_to_ns(traj.times[k]));
    const auto& m = traj.states[k].matrix();
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        out << ',' << detail::format_number(m(i, j).real()) << ','
            << detail::format_number(m(i, j).imag());
      }
    }
    out << '\n';
  }
}

}  // namespace stirap
