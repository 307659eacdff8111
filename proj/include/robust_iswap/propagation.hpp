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

// Time-ordered evolution of zeroth-order states and their first-order
// corrections under piecewise-constant Hamiltonians.

#include <optional>
#include <vector>

#include "robust_iswap/operators.hpp"
#include "robust_iswap/pulses.hpp"

namespace robust_iswap {

struct TimeGrid {
  double total_time = 0.0;
  Eigen::Index steps = 1;

  double dt() const { return total_time / static_cast<double>(steps); }
  void validate() const;
};

/// The stacked pair (psi0, psi1).
struct AugmentedState {
  Ket zeroth;
  Ket first;
};

struct PropagationOptions {
  double j_effective = 1.0;
  /// Grid density used for Chebyshev pulses.
  Eigen::Index sampling_steps = kDefaultSamplingSteps;
  /// First-order noise operator; defaults to dH/dJ.
  std::optional<Matrix4cd> noise;
};

/// Piecewise pulses use their own steps; Chebyshev pulses use 2 sampling_steps
/// Magnus sub-steps.
TimeGrid pulse_grid(const Pulse& p, Eigen::Index sampling_steps = kDefaultSamplingSteps);

/// J_eff H_0 + H_c for every step of pulse_grid.
std::vector<Matrix4cd> step_hamiltonians(const Pulse& p, double j_effective,
                                         Eigen::Index sampling_steps = kDefaultSamplingSteps);

/// prod_{i = N-1..0} exp(-i H_i dt).
Operator evolve_unitary(const Pulse& p, double j_effective = 1.0,
                        Eigen::Index sampling_steps = kDefaultSamplingSteps);

AugmentedState propagate_augmented(const Pulse& p, const Ket& initial,
                                   const PropagationOptions& options = {});

std::vector<AugmentedState> first_order_states(const Pulse& p,
                                               const std::vector<Ket>& basis,
                                               const PropagationOptions& options = {});

/// Same recursion for any dimension, exponentiating the 2d x 2d block
/// generator with expm_general. Reference engine for cross-validation.
AugmentedState propagate_augmented_general(const std::vector<Eigen::MatrixXcd>& hamiltonians,
                                           double dt, const Eigen::MatrixXcd& noise,
                                           const Ket& initial);

/// {|00>, |01>, |10>, |11>}.
std::vector<Ket> computational_basis();

/// (|0> + |1>)(|0> + |1>) / 2.
Ket plus_plus_state();

}  // namespace robust_iswap
