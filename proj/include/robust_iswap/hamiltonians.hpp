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

// Two-qubit Hamiltonians in units J = 1, hbar = 1: the exchange term, the
// three control layouts and the first-order noise operator.

#include <string>
#include <vector>

#include "robust_iswap/numerics.hpp"
#include "robust_iswap/operators.hpp"

namespace robust_iswap {

struct ExchangeParams {
  double j = 1.0;
};

enum class LayoutKind { Global, FullLocal, GlobalPlusDetuning };

struct ControlLayout {
  LayoutKind kind = LayoutKind::FullLocal;
  double delta = 0.0;       // detuning on qubit 2, GlobalPlusDetuning only
  double omega_max = 50.0;  // amplitude bound

  /// Number of independently driven amplitude/phase pairs (1 or 2).
  int drives() const { return kind == LayoutKind::FullLocal ? 2 : 1; }
  /// Number of scalar control channels (amplitude and phase per drive).
  int channels() const { return 2 * drives(); }
  /// Number of independent frame triples (1 shared or 2 per-qubit).
  int frame_triples() const { return drives(); }

  void validate() const;
};

/// One drive's amplitude |Omega| (may be negative) and phase phi.
struct DriveSample {
  double amplitude = 0.0;
  double phase = 0.0;
};

std::string layout_name(LayoutKind kind);
/// Accepts "global", "full-local" and "detuned".
LayoutKind parse_layout(const std::string& name);
/// Channel names in serialization order, e.g. {"omega", "phi"}.
std::vector<std::string> channel_names(LayoutKind kind);

/// J (sigma_+ sigma_- + sigma_- sigma_+), basis {|00>,|01>,|10>,|11>}.
Operator exchange_hamiltonian(const ExchangeParams& p = {});

Operator control_hamiltonian(const ControlLayout& layout,
                             const std::vector<DriveSample>& drives);

/// Fast path: control Hamiltonian from channel values laid out as
/// (omega, phi) or (omega1, phi1, omega2, phi2).
Matrix4cd control_matrix(const ControlLayout& layout, const double* channels);

/// dH_c / d(channel) for every channel, same layout as control_matrix.
void control_derivatives(const ControlLayout& layout, const double* channels,
                         Matrix4cd* out);

/// dH/dJ = sigma_+ sigma_- + sigma_- sigma_+.
Operator first_order_hamiltonian();

Operator swap_operator();
/// Projector onto the single-excitation subspace span{|01>, |10>}.
Operator single_excitation_projector();

/// The iSWAP gate exp(-i H_0 pi/2) at J = 1.
Matrix4cd iswap_matrix();

/// Two-qubit operators built from single-qubit ones, qubit 1 on the left.
Matrix4cd on_qubit(int qubit, const Eigen::Matrix2cd& op);

}  // namespace robust_iswap
