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

#include "robust_iswap/objectives.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "robust_iswap/hamiltonians.hpp"

namespace robust_iswap {

namespace {

Matrix4cd kron4(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Matrix4cd out;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  }
  return out;
}

double min_eigenvalue(const Eigen::MatrixXcd& h) {
  const Eigen::MatrixXcd herm = 0.5 * (h + h.adjoint());
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(herm, Eigen::EigenvaluesOnly)
      .eigenvalues()
      .minCoeff();
}

}  // namespace

Eigen::Matrix2cd rotation_matrix(const RotationAngles& a) {
  const double c = std::cos(0.5 * a.theta);
  const double s = std::sin(0.5 * a.theta);
  Eigen::Matrix2cd r;
  r << c, -std::polar(s, a.lambda), std::polar(s, a.phi), std::polar(c, a.phi + a.lambda);
  return r;
}

std::array<Eigen::Matrix2cd, 3> rotation_derivatives(const RotationAngles& a) {
  const double c = std::cos(0.5 * a.theta);
  const double s = std::sin(0.5 * a.theta);
  const Complex i(0, 1);
  const Complex el = std::polar(1.0, a.lambda);
  const Complex ep = std::polar(1.0, a.phi);
  const Complex epl = std::polar(1.0, a.phi + a.lambda);
  std::array<Eigen::Matrix2cd, 3> d;
  d[0] << -0.5 * s, -0.5 * c * el, 0.5 * c * ep, -0.5 * s * epl;
  d[1] << 0, 0, i * s * ep, i * c * epl;
  d[2] << 0, -i * s * el, 0, i * c * epl;
  return d;
}

Operator single_qubit_rotation(const FrameAngles& f, int qubit) {
  return Operator(Eigen::MatrixXcd(rotation_matrix(f.qubit(qubit))), {2});
}

Matrix4cd frame_operator(const FrameAngles& f) {
  return kron4(rotation_matrix(f.qubit(0)), rotation_matrix(f.qubit(1)));
}

double bell_fidelity(const std::vector<Ket>& final_states, const FrameAngles& frames,
                     const Operator& target) {
  if (final_states.size() != 4) {
    throw DimensionError("bell_fidelity: expected 4 final states, got " +
                         std::to_string(final_states.size()));
  }
  if (target.dim() != 4) throw DimensionError("bell_fidelity: target must be 4x4");
  const Matrix4cd framed = frame_operator(frames) * Matrix4cd(target.matrix());
  Complex tau = 0.0;
  for (int q = 0; q < 4; ++q) {
    const Ket& psi = final_states[static_cast<std::size_t>(q)];
    if (psi.size() != 4) throw DimensionError("bell_fidelity: states must have dimension 4");
    tau += psi.dot(framed.col(q));
  }
  return std::norm(tau) / 16.0;
}

double state_fidelity(const Ket& final_state, const FrameAngles& frames,
                      const Ket& target_state) {
  if (final_state.size() != 4 || target_state.size() != 4) {
    throw DimensionError("state_fidelity: states must have dimension 4");
  }
  const Vector4cd framed = frame_operator(frames) * Vector4cd(target_state);
  return std::norm(final_state.dot(framed));
}

double robustness(const std::vector<Ket>& first_states) {
  double r = 0.0;
  for (const auto& k : first_states) r += k.squaredNorm();
  return r;
}

double extended_robustness(const std::vector<Ket>& zeroth, const std::vector<Ket>& first,
                           double alpha) {
  if (zeroth.size() != first.size()) {
    throw DimensionError("extended_robustness: state lists differ in length");
  }
  double r = 0.0;
  for (std::size_t q = 0; q < first.size(); ++q) {
    r += (first[q] - Complex(0, alpha) * zeroth[q]).squaredNorm();
  }
  return r;
}

CostBreakdown cost(const Pulse& p, const Operator& target,
                   const PropagationOptions& options) {
  const auto states = first_order_states(p, computational_basis(), options);
  std::vector<Ket> zeroth;
  std::vector<Ket> first;
  for (const auto& s : states) {
    zeroth.push_back(s.zeroth);
    first.push_back(s.first);
  }
  return CostBreakdown::from(bell_fidelity(zeroth, p.frames, target), robustness(first));
}

CostBreakdown state_cost(const Pulse& p, const Ket& initial, const Ket& target_state,
                         const PropagationOptions& options,
                         StateRobustness robustness) {
  const auto s = propagate_augmented(p, initial, options);
  double r = s.first.squaredNorm();
  if (robustness == StateRobustness::Extended) r -= std::norm(s.zeroth.dot(s.first));
  return CostBreakdown::from(state_fidelity(s.zeroth, p.frames, target_state), std::max(r, 0.0));
}

bool CriteriaReport::any_fires() const {
  return commuting_fires || psd_fires || (decomposition && decomposition->fires);
}

std::string CriteriaReport::to_json() const {
  nlohmann::ordered_json j;
  j["tolerance"] = tolerance;
  j["commuting"] = {{"max_commutator_norm", commutator_norm}, {"fires", commuting_fires}};
  j["positive_semidefinite"] = {{"min_eigenvalue", min_eigenvalue}, {"fires", psd_fires}};
  if (decomposition) {
    j["commuting_times_psd"] = {{"product_residual", decomposition->product_residual},
                                {"p_negativity", decomposition->p_negativity},
                                {"c_hermiticity", decomposition->c_hermiticity},
                                {"max_commutator_norm", decomposition->c_commutator},
                                {"fires", decomposition->fires}};
  } else {
    j["commuting_times_psd"] = nullptr;
  }
  return j.dump(2);
}

CriteriaReport check_criteria(const std::vector<Operator>& h0_samples, const Operator& h1,
                              const std::optional<std::pair<Operator, Operator>>& candidate) {
  if (!is_hermitian(h1.matrix())) {
    throw InvalidHamiltonian("check_criteria: first-order Hamiltonian is not Hermitian");
  }
  CriteriaReport r;
  r.tolerance = numerics().criterion_tol;
  for (const auto& h0 : h0_samples) {
    if (h0.dim() != h1.dim()) throw DimensionError("check_criteria: dimension mismatch");
    r.commutator_norm = std::max(r.commutator_norm, max_norm(commutator(h1.matrix(), h0.matrix())));
  }
  r.commuting_fires = r.commutator_norm < r.tolerance;
  r.min_eigenvalue = min_eigenvalue(h1.matrix());
  r.psd_fires = r.min_eigenvalue >= -r.tolerance;
  if (candidate) {
    const auto& [p, c] = *candidate;
    if (p.dim() != h1.dim() || c.dim() != h1.dim()) {
      throw DimensionError("check_criteria: candidate dimension mismatch");
    }
    DecompositionEvidence d;
    d.product_residual = max_norm(h1.matrix() - p.matrix() * c.matrix());
    d.p_negativity = std::max(0.0, -min_eigenvalue(p.matrix()));
    d.c_hermiticity = hermiticity_error(c.matrix());
    for (const auto& h0 : h0_samples) {
      d.c_commutator = std::max(d.c_commutator, max_norm(commutator(c.matrix(), h0.matrix())));
    }
    d.fires = d.product_residual < r.tolerance && d.p_negativity <= r.tolerance &&
              d.c_hermiticity < r.tolerance && d.c_commutator < r.tolerance &&
              hermiticity_error(p.matrix()) < r.tolerance;
    r.decomposition = d;
  }
  return r;
}

double robustness_trace_integral(const Pulse& p, const Matrix4cd& h1,
                                 Eigen::Index sampling_steps, double j_effective) {
  static constexpr std::array<double, 5> kNodes = {
      -0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831, 0.9061798459386640};
  static constexpr std::array<double, 5> kWeights = {
      0.2369268850561891, 0.4786286704993665, 0.5688888888888889, 0.4786286704993665,
      0.2369268850561891};
  const TimeGrid grid = pulse_grid(p, sampling_steps);
  grid.validate();
  const double dt = grid.dt();

  // A(t) = U(t)^+ H1 U(t) at every quadrature node, with its weight.
  std::vector<Matrix4cd> a;
  std::vector<double> w;
  Matrix4cd u = Matrix4cd::Identity();
  for (const auto& h : step_hamiltonians(p, j_effective, sampling_steps)) {
    Eigen::SelfAdjointEigenSolver<Matrix4cd> eig(h);
    const Matrix4cd& q = eig.eigenvectors();
    auto partial = [&](double s) {
      const Eigen::Vector4cd ph = (Complex(0, -s) * eig.eigenvalues().cast<Complex>()).array().exp();
      return Matrix4cd(q * ph.asDiagonal() * q.adjoint() * u);
    };
    for (std::size_t k = 0; k < kNodes.size(); ++k) {
      const Matrix4cd uk = partial(0.5 * dt * (1.0 + kNodes[k]));
      a.push_back(uk.adjoint() * h1 * uk);
      w.push_back(0.5 * dt * kWeights[k]);
    }
    u = partial(dt);
  }
  double total = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
      // Tr(A_i A_j) for Hermitian A = Re <A_j, A_i>.
      row += w[j] * (a[i].array() * a[j].array().conjugate()).real().sum();
    }
    total += w[i] * row;
  }
  return total;
}

}  // namespace robust_iswap
