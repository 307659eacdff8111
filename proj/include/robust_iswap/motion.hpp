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

// Two molecules in harmonic traps: motion-modulated exchange, the Holstein
// motion-rotation coupling, its polaron transform and the coth estimators.
// Tensor order is (qubit 1, qubit 2, motion 1, motion 2).

#include "robust_iswap/hamiltonians.hpp"
#include "robust_iswap/operators.hpp"

namespace robust_iswap {

struct MotionalModel {
  double omega_over_j = 7.0;
  double length_ratio = 0.0421;  // l / R with l = sqrt(1 / (2 m omega))
  double beta_ratio = 0.42;      // omega / (k_B T)
  Eigen::Index n_max = 7;        // motional levels per molecule
  double zeta = 0.0;             // trap displacement in units of l
  double delta_split = 0.0;      // rotational splitting

  void validate() const;
  Eigen::Index dim() const { return 4 * n_max * n_max; }
};

/// J Hex (x) (1 - 3 (l/R)^2 (X1 - X2)^2) + omega (n1 + n2 + 1), X = a + a^+.
Operator motion_modulated_exchange(const ExchangeParams& p,
                                   const MotionalModel& m);

/// Sum_j [omega (n_j + 1/2) + (Delta/2) sigma_z^j
///        - (zeta omega / 2)(a_j + a_j^+)|e><e|_j] + J Hex.
Operator holstein_hamiltonian(const MotionalModel& m,
                              const ExchangeParams& p = {});

/// U = U_1 U_2 with U_j = exp[(zeta/4)(a_j - a_j^+)(I - sigma_z^j)], which
/// maps a_j to a_j + (zeta/2)|e><e|_j.
Operator polaron_transform(const MotionalModel& m);

/// Sign of the first-order (p_1 - p_2) term in the transformed Hamiltonian.
enum class FirstOrderSign {
  Derived,    // +i J theta (|e0><0e| - |0e><e0|), theta = zeta (P1 - P2) / 2
  AsPrinted,  // opposite sign
};

/// Second-order polaron-frame Hamiltonian, P = i (a^+ - a):
/// Sum_j [omega (n_j + 1/2) + (Delta/2) sigma_z^j - (zeta^2 omega/4)|e><e|_j]
/// + J (1 - zeta^2 (P1 - P2)^2 / 8) Hex + first-order term.
Operator polaron_frame_hamiltonian(const MotionalModel& m,
                                   const ExchangeParams& p = {},
                                   FirstOrderSign sign = FirstOrderSign::Derived);

/// Frobenius norm of U H_tot U^+ - H_tilde restricted to motional levels
/// n_1, n_2 < interior. Uses the block structure of U, so large n_max is cheap.
double polaron_residual(const MotionalModel& m, Eigen::Index interior,
                        const ExchangeParams& p = {},
                        FirstOrderSign sign = FirstOrderSign::Derived);

double coth(double x);

/// Delta J_mot / J = 6 sqrt(2) (l/R)^2 coth(beta / 2).
double delta_j_motion_estimate(const MotionalModel& m);

/// Delta J_mot-rot / J = (sqrt(2)/4) zeta^2 coth(beta / 2).
double delta_j_motrot_estimate(const MotionalModel& m);

}  // namespace robust_iswap
