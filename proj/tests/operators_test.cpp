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

#include "robust_iswap/operators.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>
#include <unsupported/Eigen/MatrixFunctions>

#include "robust_iswap/hamiltonians.hpp"

namespace robust_iswap {
namespace {

Eigen::MatrixXcd random_hermitian(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = Complex(g(rng), g(rng));
  }
  return 0.5 * (a + a.adjoint());
}

Eigen::MatrixXcd random_density(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = Complex(g(rng), g(rng));
  }
  Eigen::MatrixXcd rho = a * a.adjoint();
  return rho / rho.trace();
}

Eigen::MatrixXcd taylor_exp(const Eigen::MatrixXcd& a, int terms) {
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Identity(a.rows(), a.cols());
  Eigen::MatrixXcd term = sum;
  for (int k = 1; k < terms; ++k) {
    term = (term * a / static_cast<double>(k)).eval();
    sum += term;
  }
  return sum;
}

TEST(Kron, IdentityTimesIdentityIsIdentity) {
  const Operator i4 = kron(identity_op(2), identity_op(2));
  EXPECT_TRUE(i4.matrix().isApprox(Eigen::MatrixXcd::Identity(4, 4), 0.0));
  EXPECT_EQ(i4.dims(), (std::vector<Eigen::Index>{2, 2}));
}

TEST(Kron, FlipFlopTermsGiveExchangeMatrix) {
  const Operator h = kron(sigma_plus(), sigma_minus()) + kron(sigma_minus(), sigma_plus());
  Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(4, 4);
  expected(1, 2) = 1.0;
  expected(2, 1) = 1.0;
  EXPECT_EQ(h.matrix(), expected);
}

TEST(Kron, SigmaZOnFirstQubitSpectrum) {
  const Operator z1 = kron(pauli_z(), identity_op(2));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(z1.matrix());
  Eigen::Vector4d expected(-1, -1, 1, 1);
  EXPECT_TRUE(eig.eigenvalues().isApprox(expected, 1e-15));
  // Computational-basis diagonal: {+1, +1, -1, -1}.
  EXPECT_DOUBLE_EQ(z1(0, 0).real(), 1.0);
  EXPECT_DOUBLE_EQ(z1(1, 1).real(), 1.0);
  EXPECT_DOUBLE_EQ(z1(2, 2).real(), -1.0);
  EXPECT_DOUBLE_EQ(z1(3, 3).real(), -1.0);
}

TEST(Kron, AssociativeIndexMappingBitwise) {
  // Small-integer entries make every product exact, so only the index
  // mapping can differ.
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> d(-9, 9);
  auto integer_op = [&](Eigen::Index n) {
    Eigen::MatrixXcd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) m(i, j) = Complex(d(rng), d(rng));
    return Operator(m);
  };
  const Operator a = integer_op(2);
  const Operator b = integer_op(3);
  const Operator c = integer_op(2);
  const Operator left = kron(kron(a, b), c);
  const Operator right = kron(a, kron(b, c));
  EXPECT_EQ(left.matrix(), right.matrix());
  EXPECT_EQ(left.dims(), right.dims());
  EXPECT_EQ(left.dims(), (std::vector<Eigen::Index>{2, 3, 2}));
}

TEST(Kron, AssociativeOnRandomHermitian) {
  std::mt19937_64 rng(4);
  const Operator a(random_hermitian(2, rng));
  const Operator b(random_hermitian(3, rng));
  const Operator c(random_hermitian(4, rng));
  EXPECT_LT(max_norm(kron(kron(a, b), c).matrix() - kron(a, kron(b, c)).matrix()), 1e-15);
}

TEST(OperatorType, RejectsInconsistentFactorization) {
  EXPECT_THROW(Operator(Eigen::MatrixXcd::Identity(4, 4), {2, 3}), DimensionError);
  EXPECT_THROW(Operator(Eigen::MatrixXcd::Zero(2, 3)), DimensionError);
}

TEST(ExpmSkewHermitian, ExchangeAtQuarterPeriodIsIswap) {
  const Operator u = expm_skew_hermitian(exchange_hamiltonian(), M_PI / 2);
  EXPECT_LT(max_norm(u.matrix() - Eigen::MatrixXcd(iswap_matrix())), 1e-14);
  EXPECT_NEAR(u(1, 2).imag(), -1.0, 1e-15);
}

TEST(ExpmSkewHermitian, ZeroTimeIsIdentity) {
  std::mt19937_64 rng(5);
  const Eigen::MatrixXcd h = random_hermitian(6, rng);
  EXPECT_LT(max_norm(expm_skew_hermitian(h, 0.0) - Eigen::MatrixXcd::Identity(6, 6)), 1e-14);
}

TEST(ExpmSkewHermitian, PauliRotation) {
  const Operator u = expm_skew_hermitian(pauli_x(), M_PI / 2);
  const Eigen::MatrixXcd expected = Complex(0, -1) * pauli_x().matrix();
  EXPECT_LT(max_norm(u.matrix() - expected), 1e-15);
}

TEST(ExpmSkewHermitian, RejectsNonHermitian) {
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(2, 2);
  h(0, 1) = 1.0;
  EXPECT_THROW(expm_skew_hermitian(h, 1.0), InvalidHamiltonian);
}

TEST(ExpmSkewHermitian, UnitaryForRandomHermitianUpTo200) {
  std::mt19937_64 rng(11);
  for (Eigen::Index n : {1, 2, 4, 17, 64, 200}) {
    const Eigen::MatrixXcd h = random_hermitian(n, rng);
    const Eigen::MatrixXcd u = expm_skew_hermitian(h, 0.7);
    EXPECT_LT(unitarity_error(u), 1e-10) << "n = " << n;
  }
}

TEST(ExpmSkewHermitian, SpectralReconstruction) {
  std::mt19937_64 rng(13);
  const Eigen::MatrixXcd h = random_hermitian(30, rng);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h);
  const Eigen::MatrixXcd rebuilt = eig.eigenvectors() *
                                   eig.eigenvalues().cast<Complex>().asDiagonal() *
                                   eig.eigenvectors().adjoint();
  EXPECT_LT(max_norm(rebuilt - h), 1e-10);
}

TEST(ExpmGeneral, ZeroMatrixIsIdentity) {
  EXPECT_EQ(expm_general(Eigen::MatrixXcd::Zero(5, 5)), Eigen::MatrixXcd::Identity(5, 5));
}

TEST(ExpmGeneral, DecoupledBlockTriangular) {
  const double dt = 0.3;
  const Eigen::MatrixXcd h0 = exchange_hamiltonian().matrix();
  Eigen::MatrixXcd gen = Eigen::MatrixXcd::Zero(8, 8);
  gen.topLeftCorner(4, 4) = Complex(0, -dt) * h0;
  gen.bottomRightCorner(4, 4) = Complex(0, -dt) * h0;
  const Eigen::MatrixXcd g = expm_general(gen);
  const Eigen::MatrixXcd u = expm_skew_hermitian(h0, dt);
  EXPECT_LT(max_norm(g.topLeftCorner(4, 4) - u), 1e-14);
  EXPECT_LT(max_norm(g.bottomRightCorner(4, 4) - u), 1e-14);
  EXPECT_LT(max_norm(g.bottomLeftCorner(4, 4)), 1e-15);
  EXPECT_LT(max_norm(g.topRightCorner(4, 4)), 1e-15);
}

TEST(ExpmGeneral, CommutingBlocksMatchClosedFormAndTaylor) {
  // H1 = 0.7 H0 + 0.2 I commutes with H0.
  const double dt = 0.9;
  const Eigen::MatrixXcd h0 = exchange_hamiltonian().matrix();
  const Eigen::MatrixXcd h1 = 0.7 * h0 + 0.2 * Eigen::MatrixXcd::Identity(4, 4);
  Eigen::MatrixXcd gen = Eigen::MatrixXcd::Zero(8, 8);
  gen.topLeftCorner(4, 4) = Complex(0, -dt) * h0;
  gen.bottomLeftCorner(4, 4) = Complex(0, -dt) * h1;
  gen.bottomRightCorner(4, 4) = Complex(0, -dt) * h0;
  const Eigen::MatrixXcd g = expm_general(gen);
  const Eigen::MatrixXcd closed = Complex(0, -dt) * h1 * expm_skew_hermitian(h0, dt);
  EXPECT_LT(max_norm(g.bottomLeftCorner(4, 4) - closed), 1e-13);
  EXPECT_LT(max_norm(g - taylor_exp(gen, 60)), 1e-13);
}

TEST(ExpmGeneral, MatchesReferenceScalingAndSquaring) {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> g;
  for (double scale : {1e-3, 0.1, 0.8, 2.0, 5.0, 40.0}) {
    Eigen::MatrixXcd a(6, 6);
    for (Eigen::Index i = 0; i < 6; ++i) {
      for (Eigen::Index j = 0; j < 6; ++j) a(i, j) = scale * Complex(g(rng), g(rng)) / 6.0;
    }
    const Eigen::MatrixXcd ours = expm_general(a);
    const Eigen::MatrixXcd ref = a.exp();
    EXPECT_LT((ours - ref).norm() / ref.norm(), 1e-12) << "scale " << scale;
  }
}

TEST(ExpmGeneral, AgreesWithSpectralPathOnHermitianGenerators) {
  std::mt19937_64 rng(19);
  for (Eigen::Index n : {2, 8, 40}) {
    const Eigen::MatrixXcd h = random_hermitian(n, rng);
    const Eigen::MatrixXcd a = Complex(0, -1.3) * h;
    EXPECT_LT(max_norm(expm_general(a) - expm_skew_hermitian(h, 1.3)), 1e-10);
  }
}

TEST(PartialTrace, ProductStateReturnsSystemFactor) {
  std::mt19937_64 rng(23);
  const Operator rs(random_density(2, rng));
  const Operator re(random_density(3, rng));
  const Operator reduced = partial_trace(kron(rs, re), {0});
  EXPECT_LT(max_norm(reduced.matrix() - rs.matrix()), 1e-15);
}

TEST(PartialTrace, BellStateIsMaximallyMixed) {
  Ket psi = Ket::Zero(4);
  psi(1) = psi(2) = 1.0 / std::sqrt(2.0);
  const Operator rho(psi * psi.adjoint(), {2, 2});
  const Operator reduced = partial_trace(rho, {0});
  EXPECT_LT(max_norm(reduced.matrix() - 0.5 * Eigen::MatrixXcd::Identity(2, 2)), 1e-15);
}

TEST(PartialTrace, MatchesExplicitIndexSumOnRandom4x3) {
  std::mt19937_64 rng(29);
  const Eigen::MatrixXcd rho = random_density(12, rng);
  const Operator op(rho, {4, 3});
  // Oracle: explicit double loops over (i, k) and (j, k).
  Eigen::MatrixXcd keep_first = Eigen::MatrixXcd::Zero(4, 4);
  Eigen::MatrixXcd keep_second = Eigen::MatrixXcd::Zero(3, 3);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 3; ++k) keep_first(i, j) += rho(i * 3 + k, j * 3 + k);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 4; ++k) keep_second(i, j) += rho(k * 3 + i, k * 3 + j);
  EXPECT_LT(max_norm(partial_trace(op, {0}).matrix() - keep_first), 1e-15);
  EXPECT_LT(max_norm(partial_trace(op, {1}).matrix() - keep_second), 1e-15);
}

TEST(PartialTrace, AllAndNoneKept) {
  std::mt19937_64 rng(31);
  const Operator rho(random_density(12, rng), {2, 3, 2});
  EXPECT_EQ(partial_trace(rho, {0, 1, 2}).matrix(), rho.matrix());
  const Operator scalar = partial_trace(rho, {});
  ASSERT_EQ(scalar.dim(), 1);
  EXPECT_NEAR(std::abs(scalar(0, 0) - rho.matrix().trace()), 0.0, 1e-12);
}

TEST(PartialTrace, PreservesTraceAndPositivity) {
  std::mt19937_64 rng(37);
  const Operator rho(random_density(24, rng), {2, 3, 4});
  for (std::vector<std::size_t> keep : {std::vector<std::size_t>{0}, {1}, {2}, {0, 2}, {1, 2}}) {
    const Operator r = partial_trace(rho, keep);
    EXPECT_NEAR(std::abs(r.matrix().trace() - Complex(1.0)), 0.0, 1e-12);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(r.matrix());
    EXPECT_GE(eig.eigenvalues().minCoeff(), -1e-12);
  }
}

TEST(PartialTrace, RequiresFactorization) {
  const Operator rho(Eigen::MatrixXcd::Identity(4, 4) / 4.0);
  EXPECT_THROW(partial_trace(rho, {0}), DimensionError);
  const Operator fact(Eigen::MatrixXcd::Identity(4, 4) / 4.0, {2, 2});
  EXPECT_THROW(partial_trace(fact, {2}), DimensionError);
}

TEST(ThermalState, ZeroTemperatureIsGroundState) {
  const Operator rho = thermal_state(std::numeric_limits<double>::infinity(), 5);
  Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(5, 5);
  expected(0, 0) = 1.0;
  EXPECT_EQ(rho.matrix(), expected);
}

TEST(ThermalState, MeanOccupationMatchesGeometricSeries) {
  const double beta = 0.42;
  const Operator rho = thermal_state(beta, 400);
  const double nbar = (rho.matrix() * number_op(400).matrix()).trace().real();
  EXPECT_NEAR(nbar, 1.0 / std::expm1(beta), 1e-12);
  EXPECT_NEAR(nbar, 1.916, 1e-3);
}

TEST(ThermalState, WeightsNonIncreasingAndNormalized) {
  const Operator rho = thermal_state(0.42, 7);
  EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-14);
  for (Eigen::Index n = 1; n < 7; ++n) {
    EXPECT_LE(rho(n, n).real(), rho(n - 1, n - 1).real());
  }
  EXPECT_THROW(thermal_state(0.0, 3), DomainError);
}

}  // namespace
}  // namespace robust_iswap
