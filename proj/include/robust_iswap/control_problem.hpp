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

#pragma once

// Cost C = 1 - F + R and its analytic gradient over a pulse parameter
// vector, by forward propagation of the augmented states and a backward
// adjoint sweep.
//
// Parameter vector: channel-major control parameters followed by frame
// angles (theta, phi, lambda) per triple. Piecewise amplitudes are stored as
// w with Omega = omega_max tanh(w / omega_max); Chebyshev coefficients and
// all phases are raw.

#include <cstdint>
#include <limits>

#include "robust_iswap/hamiltonians.hpp"
#include "robust_iswap/pulses.hpp"

namespace robust_iswap {

enum class ParameterBasis { Piecewise, Chebyshev };
enum class CostMode { Gate, State };

struct ProblemSpec {
  ControlLayout layout;
  double duration = 4.5;
  ParameterBasis basis = ParameterBasis::Piecewise;
  /// Piecewise step count, or the Chebyshev sampling grid.
  Eigen::Index steps = 90;
  int order = 20;
  CostMode mode = CostMode::Gate;
  Matrix4cd target = iswap_matrix();
  /// State mode: initial state and target state (target * initial if unset).
  Vector4cd initial = Vector4cd::Constant(Complex(0.5, 0.0));
  std::optional<Vector4cd> target_state;
  StateRobustness state_robustness = StateRobustness::Extended;
  double j = 1.0;
  std::optional<Matrix4cd> noise;
  /// Weight of the Chebyshev hinge penalties, summed over propagation nodes:
  /// max(0, |Omega| - omega_max)^2, max(0, |dOmega/dt| - amplitude_rate_max)^2
  /// and max(0, |dphi/dt| - phase_rate_max)^2.
  double penalty_weight = 1.0;
  double amplitude_rate_max = std::numeric_limits<double>::infinity();
  double phase_rate_max = std::numeric_limits<double>::infinity();
};

class ControlProblem {
 public:
  explicit ControlProblem(ProblemSpec spec);

  const ProblemSpec& spec() const { return spec_; }
  Eigen::Index num_parameters() const { return num_controls_ + 3 * spec_.layout.frame_triples(); }
  Eigen::Index num_control_parameters() const { return num_controls_; }
  Eigen::Index grid_steps() const { return spec_.steps; }

  /// Objective value (C, plus the amplitude penalty for Chebyshev).
  double evaluate(const Eigen::VectorXd& x, Eigen::VectorXd* grad = nullptr,
                  CostBreakdown* breakdown = nullptr) const;

  /// Physical controls, channels x steps; Chebyshev problems sample the two
  /// Gauss nodes of every step.
  Eigen::MatrixXd controls(const Eigen::VectorXd& x) const;
  FrameAngles frames(const Eigen::VectorXd& x) const;

  Pulse to_pulse(const Eigen::VectorXd& x) const;
  /// Inverse of to_pulse. Chebyshev pulses are sampled for a piecewise problem.
  Eigen::VectorXd from_pulse(const Pulse& p) const;

  /// Uniform in [-0.5, 0.5] * scale; amplitude-like parameters use
  /// amplitude_scale, phases and frame angles use angle_scale.
  Eigen::VectorXd random_parameters(std::uint64_t seed, double amplitude_scale = 1.0,
                                    double angle_scale = M_PI) const;

 private:
  ProblemSpec spec_;
  Eigen::Index num_controls_ = 0;
  Matrix4cd noise_;
  Eigen::Matrix<Complex, 4, Eigen::Dynamic> targets_unframed_;
  Eigen::Matrix<Complex, 4, Eigen::Dynamic> initial_;
  Eigen::MatrixXd cheb_;   // (order + 1) x 2 steps, T_n at the Gauss nodes
  Eigen::MatrixXd dcheb_;  // d T_n / dt at the same nodes
};

}  // namespace robust_iswap
