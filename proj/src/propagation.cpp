// Copyright 2026 The robust-iswap Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "robust_iswap/propagation.hpp"

#include "robust_iswap/hamiltonians.hpp"
#include "robust_iswap/step_exponential.hpp"

namespace robust_iswap {

void TimeGrid::validate() const {
  if (steps < 1) throw DomainError("time grid needs >= 1 step");
  if (!(total_time > 0.0)) throw DomainError("time grid needs positive duration");
}

TimeGrid pulse_grid(const Pulse& p, Eigen::Index sampling_steps) {
  if (const auto* pw = std::get_if<PiecewiseBasis>(&p.basis)) {
    return {p.duration, pw->steps()};
  }
  return {p.duration, 2 * sampling_steps};
}

std::vector<Matrix4cd> step_hamiltonians(const Pulse& p, double j_effective,
                                         Eigen::Index sampling_steps) {
  const Matrix4cd h0 = j_effective * Matrix4cd(first_order_hamiltonian().matrix());
  std::vector<Matrix4cd> out;
  if (p.is_piecewise()) {
    const Eigen::MatrixXd u = control_samples(p);
    out.reserve(static_cast<std::size_t>(u.cols()));
    for (Eigen::Index i = 0; i < u.cols(); ++i) {
      const Eigen::VectorXd ch = u.col(i);
      out.push_back(h0 + control_matrix(p.layout, ch.data()));
    }
    return out;
  }
  const Eigen::MatrixXd u = gauss_node_samples(p, sampling_steps);
  out.reserve(static_cast<std::size_t>(u.cols()));
  for (Eigen::Index i = 0; i < u.cols(); i += 2) {
    const Eigen::VectorXd a = u.col(i), b = u.col(i + 1);
    const Matrix4cd ha = control_matrix(p.layout, a.data());
    const Matrix4cd hb = control_matrix(p.layout, b.data());
    out.push_back(h0 + kMagnusWeights[0] * ha + kMagnusWeights[1] * hb);
    out.push_back(h0 + kMagnusWeights[1] * ha + kMagnusWeights[0] * hb);
  }
  return out;
}

Operator evolve_unitary(const Pulse& p, double j_effective,
                        Eigen::Index sampling_steps) {
  const TimeGrid grid = pulse_grid(p, sampling_steps);
  grid.validate();
  const double dt = grid.dt();
  Matrix4cd total = Matrix4cd::Identity();
  for (const auto& h : step_hamiltonians(p, j_effective, sampling_steps)) {
    Eigen::SelfAdjointEigenSolver<Matrix4cd> eig(h);
    const Eigen::Vector4cd phases =
        (Complex(0, -dt) * eig.eigenvalues().cast<Complex>()).array().exp();
    total = (eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint() * total).eval();
  }
  return Operator(Eigen::MatrixXcd(total), {2, 2});
}

std::vector<AugmentedState> first_order_states(const Pulse& p,
                                               const std::vector<Ket>& basis,
                                               const PropagationOptions& options) {
  const TimeGrid grid = pulse_grid(p, options.sampling_steps);
  grid.validate();
  const auto k = static_cast<Eigen::Index>(basis.size());
  Eigen::Matrix<Complex, 4, Eigen::Dynamic> psi0(4, k);
  for (Eigen::Index c = 0; c < k; ++c) {
    if (basis[static_cast<std::size_t>(c)].size() != 4) {
      throw DimensionError("propagate: initial kets must have dimension 4");
    }
    psi0.col(c) = basis[static_cast<std::size_t>(c)];
  }
  Eigen::Matrix<Complex, 4, Eigen::Dynamic> psi1 =
      Eigen::Matrix<Complex, 4, Eigen::Dynamic>::Zero(4, k);
  const Matrix4cd noise =
      options.noise ? *options.noise : Matrix4cd(first_order_hamiltonian().matrix());
  StepExponential step;
  for (const auto& h : step_hamiltonians(p, options.j_effective, options.sampling_steps)) {
    step.compute(h, noise, grid.dt());
    psi1 = (step.u * psi1 + step.v * psi0).eval();
    psi0 = (step.u * psi0).eval();
  }
  std::vector<AugmentedState> out;
  for (Eigen::Index c = 0; c < k; ++c) {
    out.push_back({psi0.col(c), psi1.col(c)});
  }
  return out;
}

AugmentedState propagate_augmented(const Pulse& p, const Ket& initial,
                                   const PropagationOptions& options) {
  return first_order_states(p, {initial}, options).front();
}

AugmentedState propagate_augmented_general(const std::vector<Eigen::MatrixXcd>& hamiltonians,
                                           double dt, const Eigen::MatrixXcd& noise,
                                           const Ket& initial) {
  const Eigen::Index d = initial.size();
  if (noise.rows() != d || noise.cols() != d) {
    throw DimensionError("propagate_augmented_general: noise dimension mismatch");
  }
  Ket y(2 * d);
  y << initial, Ket::Zero(d);
  Eigen::MatrixXcd gen = Eigen::MatrixXcd::Zero(2 * d, 2 * d);
  gen.bottomLeftCorner(d, d) = Complex(0, -dt) * noise;
  for (const auto& h : hamiltonians) {
    if (h.rows() != d || h.cols() != d) {
      throw DimensionError("propagate_augmented_general: Hamiltonian dimension mismatch");
    }
    gen.topLeftCorner(d, d) = Complex(0, -dt) * h;
    gen.bottomRightCorner(d, d) = Complex(0, -dt) * h;
    y = expm_general(gen) * y;
  }
  return {y.head(d), y.tail(d)};
}

std::vector<Ket> computational_basis() {
  std::vector<Ket> out;
  for (Eigen::Index k = 0; k < 4; ++k) out.push_back(basis_ket(4, k));
  return out;
}

Ket plus_plus_state() { return Ket::Constant(4, Complex(0.5, 0.0)); }

}  // namespace robust_iswap
