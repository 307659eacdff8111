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

#include "robust_iswap/hamiltonians.hpp"

#include <cmath>

namespace robust_iswap {

namespace {

Eigen::Matrix2cd pauli(char which) {
  Eigen::Matrix2cd m;
  switch (which) {
    case 'x':
      m << 0, 1, 1, 0;
      break;
    case 'y':
      m << 0, Complex(0, -1), Complex(0, 1), 0;
      break;
    default:
      m << 1, 0, 0, -1;
  }
  return m;
}

}  // namespace

void ControlLayout::validate() const {
  if (!(omega_max > 0.0)) throw DomainError("omega_max must be positive");
  if (!std::isfinite(delta)) throw DomainError("delta must be finite");
}

std::string layout_name(LayoutKind kind) {
  switch (kind) {
    case LayoutKind::Global:
      return "global";
    case LayoutKind::FullLocal:
      return "full-local";
    case LayoutKind::GlobalPlusDetuning:
      return "detuned";
  }
  return "unknown";
}

LayoutKind parse_layout(const std::string& name) {
  if (name == "global") return LayoutKind::Global;
  if (name == "full-local") return LayoutKind::FullLocal;
  if (name == "detuned") return LayoutKind::GlobalPlusDetuning;
  throw DomainError("unknown layout '" + name + "'");
}

std::vector<std::string> channel_names(LayoutKind kind) {
  if (kind == LayoutKind::FullLocal) return {"omega1", "phi1", "omega2", "phi2"};
  return {"omega", "phi"};
}

Matrix4cd on_qubit(int qubit, const Eigen::Matrix2cd& op) {
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  const Eigen::Matrix2cd& a = qubit == 0 ? op : id;
  const Eigen::Matrix2cd& b = qubit == 0 ? id : op;
  Matrix4cd out;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  }
  return out;
}

Operator exchange_hamiltonian(const ExchangeParams& p) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
  m(1, 2) = p.j;
  m(2, 1) = p.j;
  return Operator(m, {2, 2});
}

Matrix4cd control_matrix(const ControlLayout& layout, const double* ch) {
  static const Matrix4cd x1 = on_qubit(0, pauli('x'));
  static const Matrix4cd x2 = on_qubit(1, pauli('x'));
  static const Matrix4cd y1 = on_qubit(0, pauli('y'));
  static const Matrix4cd y2 = on_qubit(1, pauli('y'));
  static const Matrix4cd z2 = on_qubit(1, pauli('z'));
  Matrix4cd h;
  if (layout.kind == LayoutKind::FullLocal) {
    h = ch[0] * (std::cos(ch[1]) * x1 + std::sin(ch[1]) * y1) +
        ch[2] * (std::cos(ch[3]) * x2 + std::sin(ch[3]) * y2);
  } else {
    h = ch[0] * (std::cos(ch[1]) * (x1 + x2) + std::sin(ch[1]) * (y1 + y2));
    if (layout.kind == LayoutKind::GlobalPlusDetuning) h += layout.delta * z2;
  }
  return h;
}

void control_derivatives(const ControlLayout& layout, const double* ch,
                         Matrix4cd* out) {
  static const Matrix4cd x1 = on_qubit(0, pauli('x'));
  static const Matrix4cd x2 = on_qubit(1, pauli('x'));
  static const Matrix4cd y1 = on_qubit(0, pauli('y'));
  static const Matrix4cd y2 = on_qubit(1, pauli('y'));
  if (layout.kind == LayoutKind::FullLocal) {
    out[0] = std::cos(ch[1]) * x1 + std::sin(ch[1]) * y1;
    out[1] = ch[0] * (-std::sin(ch[1]) * x1 + std::cos(ch[1]) * y1);
    out[2] = std::cos(ch[3]) * x2 + std::sin(ch[3]) * y2;
    out[3] = ch[2] * (-std::sin(ch[3]) * x2 + std::cos(ch[3]) * y2);
  } else {
    out[0] = std::cos(ch[1]) * (x1 + x2) + std::sin(ch[1]) * (y1 + y2);
    out[1] = ch[0] * (-std::sin(ch[1]) * (x1 + x2) + std::cos(ch[1]) * (y1 + y2));
  }
}

Operator control_hamiltonian(const ControlLayout& layout,
                             const std::vector<DriveSample>& drives) {
  layout.validate();
  if (static_cast<int>(drives.size()) != layout.drives()) {
    throw DimensionError("control_hamiltonian: expected " +
                         std::to_string(layout.drives()) + " drive(s), got " +
                         std::to_string(drives.size()));
  }
  std::vector<double> ch;
  for (const auto& d : drives) {
    ch.push_back(d.amplitude);
    ch.push_back(d.phase);
  }
  return Operator(Eigen::MatrixXcd(control_matrix(layout, ch.data())), {2, 2});
}

Operator first_order_hamiltonian() { return exchange_hamiltonian({1.0}); }

Operator swap_operator() {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
  m(0, 0) = 1;
  m(1, 2) = 1;
  m(2, 1) = 1;
  m(3, 3) = 1;
  return Operator(m, {2, 2});
}

Operator single_excitation_projector() {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
  m(1, 1) = 1;
  m(2, 2) = 1;
  return Operator(m, {2, 2});
}

Matrix4cd iswap_matrix() {
  Matrix4cd m = Matrix4cd::Zero();
  m(0, 0) = 1;
  m(1, 2) = Complex(0, -1);
  m(2, 1) = Complex(0, -1);
  m(3, 3) = 1;
  return m;
}

}  // namespace robust_iswap
