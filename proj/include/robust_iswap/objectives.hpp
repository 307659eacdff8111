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

// Fidelity, robustness, total cost and the a-priori robustness criteria.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "robust_iswap/operators.hpp"
#include "robust_iswap/propagation.hpp"
#include "robust_iswap/pulses.hpp"

namespace robust_iswap {

/// [[cos(t/2), -e^{i l} sin(t/2)], [e^{i p} sin(t/2), e^{i(p+l)} cos(t/2)]].
Eigen::Matrix2cd rotation_matrix(const RotationAngles& a);

/// d rotation_matrix / d(theta, phi, lambda).
std::array<Eigen::Matrix2cd, 3> rotation_derivatives(const RotationAngles& a);

Operator single_qubit_rotation(const FrameAngles& f, int qubit);

/// R_1 (x) R_2, or R (x) R for a shared triple.
Matrix4cd frame_operator(const FrameAngles& f);

/// (1/16) |sum_q <psi_q| (R (x) R) target |q>|^2 over the four basis states.
double bell_fidelity(const std::vector<Ket>& final_states, const FrameAngles& frames,
                     const Operator& target);

/// |<target| (R (x) R)^+ |psi>|^2 for one state.
double state_fidelity(const Ket& final_state, const FrameAngles& frames,
                      const Ket& target_state);

/// Sum_q <psi1_q|psi1_q>.
double robustness(const std::vector<Ket>& first_states);

/// Sum_q || psi1_q - i alpha psi0_q ||^2.
double extended_robustness(const std::vector<Ket>& zeroth, const std::vector<Ket>& first,
                           double alpha);

/// C = 1 - F + R with the four computational basis states.
CostBreakdown cost(const Pulse& p, const Operator& target,
                   const PropagationOptions& options = {});

/// Single-state variant: F = |<target|R psi0(T)>|^2 and R = <psi1|psi1>
/// (Plain) or <psi1|psi1> - |<psi0|psi1>|^2 (Extended).
CostBreakdown state_cost(const Pulse& p, const Ket& initial, const Ket& target_state,
                         const PropagationOptions& options = {},
                         StateRobustness robustness = StateRobustness::Extended);

struct DecompositionEvidence {
  double product_residual = 0.0;  // max |H1 - P C|
  double p_negativity = 0.0;      // max(0, -lambda_min(P))
  double c_hermiticity = 0.0;     // max |C - C^+|
  double c_commutator = 0.0;      // max_t max |[C, H0(t)]|
  bool fires = false;
};

struct CriteriaReport {
  double tolerance = 0.0;
  double commutator_norm = 0.0;   // (i) max_t max |[H1, H0(t)]|
  bool commuting_fires = false;
  double min_eigenvalue = 0.0;    // (ii) lambda_min(H1)
  bool psd_fires = false;
  std::optional<DecompositionEvidence> decomposition;  // (iii)

  bool any_fires() const;
  std::string to_json() const;
};

CriteriaReport check_criteria(const std::vector<Operator>& h0_samples, const Operator& h1,
                              const std::optional<std::pair<Operator, Operator>>& candidate = {});

/// int int Tr{H1 U(t', t) H1 U(t, t')} dt dt' by 5-point Gauss-Legendre
/// quadrature on every grid step.
double robustness_trace_integral(const Pulse& p, const Matrix4cd& h1,
                                 Eigen::Index sampling_steps = kDefaultSamplingSteps,
                                 double j_effective = 1.0);

}  // namespace robust_iswap
