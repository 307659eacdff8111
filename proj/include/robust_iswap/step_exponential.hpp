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

// Exact exponential of one piecewise-constant step of the augmented
// generator [[-iH dt, 0], [-iH1 dt, -iH dt]] for 4x4 H, and the adjoint
// sensitivity of that step with respect to H. Both come from the spectral
// decomposition of H through first and second divided differences of exp.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "robust_iswap/numerics.hpp"

namespace robust_iswap {

/// exp[a, b] = (e^a - e^b) / (a - b), continuous at a = b.
inline Complex exp_divided_1(Complex a, Complex b) {
  const Complex w = 0.5 * (a - b);
  Complex shc;
  if (std::abs(w) < 1e-3) {
    const Complex w2 = w * w;
    shc = 1.0 + w2 / 6.0 + w2 * w2 / 120.0;
  } else {
    shc = std::sinh(w) / w;
  }
  return std::exp(0.5 * (a + b)) * shc;
}

/// exp[a, b, c], the second divided difference, symmetric in its arguments.
inline Complex exp_divided_2(Complex a, Complex b, Complex c) {
  const double ab = std::abs(a - b);
  const double bc = std::abs(b - c);
  const double ac = std::abs(a - c);
  const double widest = std::max({ab, bc, ac});
  if (widest > 0.5) {
    // Divide by the widest gap: (exp[p, q] - exp[q, r]) / (p - r).
    if (ac >= ab && ac >= bc) return (exp_divided_1(a, b) - exp_divided_1(b, c)) / (a - c);
    if (ab >= bc) return (exp_divided_1(a, c) - exp_divided_1(c, b)) / (a - b);
    return (exp_divided_1(b, a) - exp_divided_1(a, c)) / (b - c);
  }
  // e^m sum_k h_k(a - m, b - m, c - m) / (k + 2)!, h_k complete homogeneous.
  const Complex m = (a + b + c) / 3.0;
  const Complex d1 = a - m;
  const Complex d2 = b - m;
  const Complex d3 = c - m;
  Complex h1 = 1.0;
  Complex h2 = 1.0;
  Complex h3 = 1.0;
  Complex sum = 0.5;
  double fact = 2.0;
  for (int k = 1; k <= 24; ++k) {
    h1 *= d1;
    h2 = h2 * d2 + h1;
    h3 = h3 * d3 + h2;
    fact *= static_cast<double>(k + 2);
    sum += h3 / fact;
  }
  return std::exp(m) * sum;
}

/// One step: U = exp(-i H dt), V = lower-left block of the augmented
/// exponential, so that (psi0, psi1) -> (U psi0, U psi1 + V psi0).
struct StepExponential {
  Matrix4cd q;          // eigenvectors of H
  Eigen::Vector4d lam;  // eigenvalues of H
  Matrix4cd f1;         // exp[mu_a, mu_b], mu = -i dt lam
  Matrix4cd b;          // -i dt Q^+ H1 Q
  Matrix4cd u;
  Matrix4cd v;
  double dt = 0.0;

  void compute(const Matrix4cd& h, const Matrix4cd& h1, double step) {
    dt = step;
    Eigen::SelfAdjointEigenSolver<Matrix4cd> eig(h);
    q = eig.eigenvectors();
    lam = eig.eigenvalues();
    std::array<Complex, 4> mu;
    for (int a = 0; a < 4; ++a) mu[a] = Complex(0, -dt * lam(a));
    for (int a = 0; a < 4; ++a) {
      for (int c = 0; c < 4; ++c) {
        // exp[mu_a, mu_c] for imaginary mu: phase times sinc.
        const double x = 0.5 * dt * (lam(a) - lam(c));
        const double sinc = std::abs(x) < 1e-4 ? 1.0 - x * x / 6.0 : std::sin(x) / x;
        f1(a, c) = std::polar(sinc, -0.5 * dt * (lam(a) + lam(c)));
      }
    }
    b = Complex(0, -dt) * (q.adjoint() * h1 * q);
    u = q * f1.diagonal().asDiagonal() * q.adjoint();
    v = q * b.cwiseProduct(f1) * q.adjoint();
  }

  /// Matrix S with Re Tr(dU mu_mult) + Re Tr(dV mv_mult) = Re Tr(dH S) for
  /// any Hermitian perturbation dH of this step's Hamiltonian.
  Matrix4cd sensitivity(const Matrix4cd& mu_mult, const Matrix4cd& mv_mult) const {
    std::array<Complex, 4> mu;
    for (int a = 0; a < 4; ++a) mu[a] = Complex(0, -dt * lam(a));
    Complex f2[4][4][4];
    for (int x = 0; x < 4; ++x) {
      for (int y = x; y < 4; ++y) {
        for (int z = y; z < 4; ++z) {
          const Complex val = exp_divided_2(mu[x], mu[y], mu[z]);
          f2[x][y][z] = f2[x][z][y] = f2[y][x][z] = val;
          f2[y][z][x] = f2[z][x][y] = f2[z][y][x] = val;
        }
      }
    }
    const Matrix4cd mu_t = q.adjoint() * mu_mult * q;
    const Matrix4cd mv_t = q.adjoint() * mv_mult * q;
    Matrix4cd w;
    for (int x = 0; x < 4; ++x) {
      for (int y = 0; y < 4; ++y) {
        Complex acc = f1(x, y) * mu_t(y, x);
        for (int c = 0; c < 4; ++c) {
          acc += b(y, c) * f2[x][y][c] * mv_t(c, x) + b(c, x) * f2[c][x][y] * mv_t(y, c);
        }
        w(y, x) = Complex(0, -dt) * acc;
      }
    }
    return q * w * q.adjoint();
  }
};

}  // namespace robust_iswap
