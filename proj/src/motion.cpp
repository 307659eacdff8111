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

#include "robust_iswap/motion.hpp"

#include <cmath>
#include <vector>

namespace robust_iswap {

namespace {

// q (x) a (x) b on (qubits, motion 1, motion 2).
struct Term {
  Matrix4cd q;
  Eigen::MatrixXcd a;
  Eigen::MatrixXcd b;
};

Eigen::MatrixXcd ladder(Eigen::Index n) { return annihilation(n).matrix(); }

Eigen::MatrixXcd position(Eigen::Index n) {
  const Eigen::MatrixXcd a = ladder(n);
  return a + a.adjoint();
}

Eigen::MatrixXcd momentum(Eigen::Index n) {
  const Eigen::MatrixXcd a = ladder(n);
  return Complex(0, 1) * (a.adjoint() - a);
}

Eigen::MatrixXcd trap(const MotionalModel& m) {
  return m.omega_over_j *
         (number_op(m.n_max).matrix() +
          0.5 * Eigen::MatrixXcd::Identity(m.n_max, m.n_max));
}

// Displacement applied to the excited rotational state: exp(i zeta P / 2).
Eigen::MatrixXcd excited_displacement(const MotionalModel& m) {
  return expm_skew_hermitian(Eigen::MatrixXcd(-0.5 * m.zeta * momentum(m.n_max)),
                             1.0);
}

Matrix4cd projector(int row, int col) {
  Matrix4cd q = Matrix4cd::Zero();
  q(row, col) = 1.0;
  return q;
}

Matrix4cd excited_on(int qubit) {
  Eigen::Matrix2cd pe = Eigen::Matrix2cd::Zero();
  pe(1, 1) = 1.0;
  return on_qubit(qubit, pe);
}

Matrix4cd sigma_z_on(int qubit) {
  Eigen::Matrix2cd z;
  z << 1, 0, 0, -1;
  return on_qubit(qubit, z);
}

Matrix4cd hop() { return projector(1, 2) + projector(2, 1); }

// Sum of terms restricted to motional levels < k. With `disp`, each term is
// conjugated by U = sum_s |s><s| (x) D^{s1} (x) D^{s2}.
Eigen::MatrixXcd assemble(const std::vector<Term>& terms, Eigen::Index k,
                          const Eigen::MatrixXcd* disp) {
  const Eigen::Index blk = k * k;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(4 * blk, 4 * blk);
  for (const auto& t : terms) {
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) {
        const Complex coeff = t.q(r, c);
        if (coeff == Complex(0)) continue;
        Eigen::MatrixXcd a = t.a;
        Eigen::MatrixXcd b = t.b;
        if (disp != nullptr) {
          if (r >> 1) a = (*disp) * a;
          if (c >> 1) a = a * disp->adjoint();
          if (r & 1) b = (*disp) * b;
          if (c & 1) b = b * disp->adjoint();
        }
        out.block(r * blk, c * blk, blk, blk) +=
            coeff * kron(Operator(a.topLeftCorner(k, k)),
                         Operator(b.topLeftCorner(k, k)))
                        .matrix();
      }
    }
  }
  return out;
}

std::vector<Term> holstein_terms(const MotionalModel& m, const ExchangeParams& p) {
  const Eigen::Index n = m.n_max;
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  const Eigen::MatrixXcd x = position(n);
  const Matrix4cd id4 = Matrix4cd::Identity();
  const double g = -0.5 * m.zeta * m.omega_over_j;
  return {
      {id4, trap(m), id},
      {id4, id, trap(m)},
      {0.5 * m.delta_split * (sigma_z_on(0) + sigma_z_on(1)), id, id},
      {g * excited_on(0), x, id},
      {g * excited_on(1), id, x},
      {p.j * hop(), id, id},
  };
}

std::vector<Term> polaron_frame_terms(const MotionalModel& m,
                                      const ExchangeParams& p,
                                      FirstOrderSign sign) {
  const Eigen::Index n = m.n_max;
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  const Eigen::MatrixXcd pm = momentum(n);
  const Eigen::MatrixXcd p2 = pm * pm;
  const Matrix4cd id4 = Matrix4cd::Identity();
  const double zeta = m.zeta;
  const double shift = -0.25 * zeta * zeta * m.omega_over_j;
  const double c2 = -p.j * zeta * zeta / 8.0;
  const double s = sign == FirstOrderSign::Derived ? 1.0 : -1.0;
  // i J theta (|e0><0e| - |0e><e0|), theta = zeta (P1 - P2) / 2.
  const Matrix4cd first = Complex(0, s * 0.5 * zeta * p.j) *
                          (projector(2, 1) - projector(1, 2));
  return {
      {id4, trap(m), id},
      {id4, id, trap(m)},
      {0.5 * m.delta_split * (sigma_z_on(0) + sigma_z_on(1)), id, id},
      {shift * (excited_on(0) + excited_on(1)), id, id},
      {p.j * hop(), id, id},
      {c2 * hop(), p2, id},
      {c2 * hop(), id, p2},
      {-2.0 * c2 * hop(), pm, pm},
      {first, pm, id},
      {-first, id, pm},
  };
}

std::vector<Eigen::Index> full_dims(const MotionalModel& m) {
  return {2, 2, m.n_max, m.n_max};
}

}  // namespace

void MotionalModel::validate() const {
  if (!(omega_over_j > 0.0)) throw DomainError("omega_over_j must be positive");
  if (n_max < 2) throw DomainError("n_max must be >= 2");
  if (!(length_ratio >= 0.0)) throw DomainError("length_ratio must be >= 0");
  if (!(zeta >= 0.0)) throw DomainError("zeta must be >= 0");
}

Operator motion_modulated_exchange(const ExchangeParams& p,
                                   const MotionalModel& m) {
  m.validate();
  const Eigen::Index n = m.n_max;
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  const Eigen::MatrixXcd x = position(n);
  const Eigen::MatrixXcd x2 = x * x;
  const double c = -3.0 * m.length_ratio * m.length_ratio * p.j;
  const Matrix4cd id4 = Matrix4cd::Identity();
  const std::vector<Term> terms = {
      {p.j * hop(), id, id},   {c * hop(), x2, id},  {c * hop(), id, x2},
      {-2.0 * c * hop(), x, x}, {id4, trap(m), id},   {id4, id, trap(m)},
  };
  return Operator(assemble(terms, n, nullptr), full_dims(m));
}

Operator holstein_hamiltonian(const MotionalModel& m, const ExchangeParams& p) {
  m.validate();
  return Operator(assemble(holstein_terms(m, p), m.n_max, nullptr), full_dims(m));
}

Operator polaron_transform(const MotionalModel& m) {
  m.validate();
  const Eigen::Index n = m.n_max;
  const Eigen::Index blk = n * n;
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  const Eigen::MatrixXcd d = excited_displacement(m);
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(4 * blk, 4 * blk);
  for (int s = 0; s < 4; ++s) {
    u.block(s * blk, s * blk, blk, blk) =
        kron(Operator((s >> 1) ? d : id), Operator((s & 1) ? d : id)).matrix();
  }
  return Operator(std::move(u), full_dims(m));
}

Operator polaron_frame_hamiltonian(const MotionalModel& m,
                                   const ExchangeParams& p,
                                   FirstOrderSign sign) {
  m.validate();
  return Operator(assemble(polaron_frame_terms(m, p, sign), m.n_max, nullptr),
                  full_dims(m));
}

double polaron_residual(const MotionalModel& m, Eigen::Index interior,
                        const ExchangeParams& p, FirstOrderSign sign) {
  m.validate();
  if (interior < 1 || interior > m.n_max) {
    throw DomainError("polaron_residual: interior must be in [1, n_max]");
  }
  const Eigen::MatrixXcd d = excited_displacement(m);
  const Eigen::MatrixXcd transformed = assemble(holstein_terms(m, p), interior, &d);
  const Eigen::MatrixXcd reference =
      assemble(polaron_frame_terms(m, p, sign), interior, nullptr);
  return (transformed - reference).norm();
}

double coth(double x) { return 1.0 / std::tanh(x); }

double delta_j_motion_estimate(const MotionalModel& m) {
  if (!(m.beta_ratio > 0.0)) throw DomainError("beta_ratio must be positive");
  return 6.0 * std::sqrt(2.0) * m.length_ratio * m.length_ratio *
         coth(0.5 * m.beta_ratio);
}

double delta_j_motrot_estimate(const MotionalModel& m) {
  if (!(m.beta_ratio > 0.0)) throw DomainError("beta_ratio must be positive");
  return std::sqrt(2.0) / 4.0 * m.zeta * m.zeta * coth(0.5 * m.beta_ratio);
}

}  // namespace robust_iswap
