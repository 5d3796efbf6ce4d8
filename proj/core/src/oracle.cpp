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

#include <unsupported/Eigen/MatrixFunctions>

#include "stirap/dynamics.hpp"
#include "stirap/error.hpp"

namespace stirap {

namespace {

using Matrix9c = Eigen::Matrix<Complex, 9, 9>;
using Vector9c = Eigen::Matrix<Complex, 9, 1>;

Matrix9c kron(const Matrix3c& a, const Matrix3c& b) {
  Matrix9c out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) out.block<3, 3>(3 * i, 3 * j) = a(i, j) * b;
  }
  return out;
}

Matrix3c ket_bra(int i, int j) {
  Matrix3c m = Matrix3c::Zero();
  m(i, j) = 1.0;
  return m;
}

// rate * (L rho L^dag - 1/2 {L^dag L, rho}), column-major vectorized.
Matrix9c jump_term(const Matrix3c& op, double rate) {
  const Matrix3c id = Matrix3c::Identity();
  const Matrix3c ldl = op.adjoint() * op;
  return rate * (kron(op.conjugate(), op) - 0.5 * kron(id, ldl) - 0.5 * kron(ldl.transpose(), id));
}

}  // namespace

Eigen::Matrix<Complex, 9, 9> liouvillian(const Matrix3c& hamiltonian, const QutritParams& p) {
  const Matrix3c id = Matrix3c::Identity();
  Matrix9c s = Complex(0.0, -1.0) * (kron(id, hamiltonian) - kron(hamiltonian.transpose(), id));

  s += jump_term(ket_bra(0, 1), p.gamma10);
  s += jump_term(ket_bra(1, 2), p.gamma21);

  // Projector dephasing: coherence ij picks up (c_i + c_j)/2, so solve
  // c_0 + c_1 = gphi10, c_0 + c_2 = gphi20, c_1 + c_2 = gphi21.
  const double c0 = 0.5 * (p.gphi10 + p.gphi20 - p.gphi21);
  const double c1 = 0.5 * (p.gphi10 + p.gphi21 - p.gphi20);
  const double c2 = 0.5 * (p.gphi20 + p.gphi21 - p.gphi10);
  s += jump_term(ket_bra(0, 0), c0);
  s += jump_term(ket_bra(1, 1), c1);
  s += jump_term(ket_bra(2, 2), c2);
  return s;
}

DensityMatrix oracle_evolve(const DensityMatrix& rho0, const QutritParams& params,
                            const DriveSchedule& sched, std::size_t n_steps) {
  params.validate();
  const double a = sched.window_start();
  const double b = sched.window_end();
  if (b == a || n_steps == 0) return rho0;
  if (b < a) throw ValidationError("oracle_evolve: window end precedes start");

  const double h = (b - a) / static_cast<double>(n_steps);
  Matrix3c rho = rho0.matrix();
  Eigen::Map<Vector9c> vec(rho.data());
  for (std::size_t k = 0; k < n_steps; ++k) {
    const double mid = a + (static_cast<double>(k) + 0.5) * h;
    const auto env = drive_envelope(sched, mid, mid);
    const Matrix3c ham = build_hamiltonian(mid, params, sched, env);
    const Matrix9c step = (liouvillian(ham, params) * h).exp();
    const Vector9c next = step * vec;
    vec = next;
  }
  return DensityMatrix(rho);
}

}  // namespace stirap
