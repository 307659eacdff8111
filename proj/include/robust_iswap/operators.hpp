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

// Dense complex linear algebra on small Hilbert spaces: the Operator
// container, elementary single-mode operators, Kronecker products, matrix
// exponentials, partial traces and thermal states.
//
// Conventions: sigma_z|0> = +|0>, sigma_z|1> = -|1>; tensor factors are
// ordered left to right (qubit 1, qubit 2, motion 1, motion 2).

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "robust_iswap/errors.hpp"
#include "robust_iswap/numerics.hpp"

namespace robust_iswap {

template <typename Real>
using BasicMatrix =
    Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

/// State vector. Physical kets are normalized; first-order corrections are not.
template <typename Real>
using BasicKet = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

/// Square complex matrix plus an optional tensor factorization of its
/// dimension, e.g. {2, 2, 7, 7} for two qubits and two truncated oscillators.
template <typename Real>
class BasicOperator {
 public:
  using Scalar = std::complex<Real>;
  using Matrix = BasicMatrix<Real>;

  BasicOperator() = default;

  explicit BasicOperator(Matrix m, std::vector<Eigen::Index> dims = {})
      : m_(std::move(m)), dims_(std::move(dims)) {
    if (m_.rows() != m_.cols()) {
      throw DimensionError("operator matrix must be square");
    }
    if (!dims_.empty()) {
      const Eigen::Index product =
          std::accumulate(dims_.begin(), dims_.end(), Eigen::Index{1},
                          std::multiplies<Eigen::Index>());
      if (product != m_.rows()) {
        throw DimensionError("dims factorization does not match dimension");
      }
    }
  }

  Eigen::Index dim() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }
  const std::vector<Eigen::Index>& dims() const { return dims_; }
  bool has_factorization() const { return !dims_.empty(); }

  /// Factorization, or the trivial one-factor list when none was given.
  std::vector<Eigen::Index> factors() const {
    return dims_.empty() ? std::vector<Eigen::Index>{dim()} : dims_;
  }

  const Scalar& operator()(Eigen::Index r, Eigen::Index c) const {
    return m_(r, c);
  }

  BasicOperator with_dims(std::vector<Eigen::Index> dims) const {
    return BasicOperator(m_, std::move(dims));
  }

 private:
  Matrix m_;
  std::vector<Eigen::Index> dims_;
};

using Operator = BasicOperator<double>;
using Ket = BasicKet<double>;
using MatrixXcd = BasicMatrix<double>;

// ---------------------------------------------------------------------------
// Elementary operators.

template <typename Real = double>
BasicOperator<Real> identity_op(Eigen::Index n) {
  return BasicOperator<Real>(BasicMatrix<Real>::Identity(n, n), {n});
}

template <typename Real = double>
BasicOperator<Real> pauli_x() {
  BasicMatrix<Real> m(2, 2);
  m << 0, 1, 1, 0;
  return BasicOperator<Real>(m, {2});
}

template <typename Real = double>
BasicOperator<Real> pauli_y() {
  using C = std::complex<Real>;
  BasicMatrix<Real> m(2, 2);
  m << C(0), C(0, -1), C(0, 1), C(0);
  return BasicOperator<Real>(m, {2});
}

template <typename Real = double>
BasicOperator<Real> pauli_z() {
  BasicMatrix<Real> m(2, 2);
  m << 1, 0, 0, -1;
  return BasicOperator<Real>(m, {2});
}

/// sigma_+ = (sigma_x - i sigma_y) / 2 = |1><0|.
template <typename Real = double>
BasicOperator<Real> sigma_plus() {
  BasicMatrix<Real> m(2, 2);
  m << 0, 0, 1, 0;
  return BasicOperator<Real>(m, {2});
}

/// sigma_- = (sigma_x + i sigma_y) / 2 = |0><1|.
template <typename Real = double>
BasicOperator<Real> sigma_minus() {
  BasicMatrix<Real> m(2, 2);
  m << 0, 1, 0, 0;
  return BasicOperator<Real>(m, {2});
}

/// Truncated bosonic annihilation operator on levels 0..n-1.
template <typename Real = double>
BasicOperator<Real> annihilation(Eigen::Index n) {
  BasicMatrix<Real> m = BasicMatrix<Real>::Zero(n, n);
  for (Eigen::Index k = 1; k < n; ++k) {
    m(k - 1, k) = std::sqrt(static_cast<Real>(k));
  }
  return BasicOperator<Real>(m, {n});
}

template <typename Real = double>
BasicOperator<Real> number_op(Eigen::Index n) {
  BasicMatrix<Real> m = BasicMatrix<Real>::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) m(k, k) = static_cast<Real>(k);
  return BasicOperator<Real>(m, {n});
}

// ---------------------------------------------------------------------------
// Algebra.

template <typename Real>
BasicOperator<Real> kron(const BasicOperator<Real>& a,
                         const BasicOperator<Real>& b) {
  const Eigen::Index na = a.dim();
  const Eigen::Index nb = b.dim();
  BasicMatrix<Real> out(na * nb, na * nb);
  for (Eigen::Index i = 0; i < na; ++i) {
    for (Eigen::Index j = 0; j < na; ++j) {
      out.block(i * nb, j * nb, nb, nb) = a(i, j) * b.matrix();
    }
  }
  std::vector<Eigen::Index> dims = a.factors();
  const auto bd = b.factors();
  dims.insert(dims.end(), bd.begin(), bd.end());
  return BasicOperator<Real>(std::move(out), std::move(dims));
}

template <typename Real, typename... Rest>
BasicOperator<Real> kron(const BasicOperator<Real>& a,
                         const BasicOperator<Real>& b, const Rest&... rest) {
  return kron(kron(a, b), rest...);
}

template <typename Real>
BasicOperator<Real> operator+(const BasicOperator<Real>& a,
                              const BasicOperator<Real>& b) {
  if (a.dim() != b.dim()) throw DimensionError("operator sum: dim mismatch");
  return BasicOperator<Real>(a.matrix() + b.matrix(),
                             a.has_factorization() ? a.dims() : b.dims());
}

template <typename Real>
BasicOperator<Real> operator-(const BasicOperator<Real>& a,
                              const BasicOperator<Real>& b) {
  if (a.dim() != b.dim()) throw DimensionError("operator sum: dim mismatch");
  return BasicOperator<Real>(a.matrix() - b.matrix(),
                             a.has_factorization() ? a.dims() : b.dims());
}

template <typename Real>
BasicOperator<Real> operator*(const BasicOperator<Real>& a,
                              const BasicOperator<Real>& b) {
  if (a.dim() != b.dim()) throw DimensionError("operator product: dim mismatch");
  return BasicOperator<Real>(a.matrix() * b.matrix(),
                             a.has_factorization() ? a.dims() : b.dims());
}

template <typename Real, typename S>
BasicOperator<Real> operator*(S s, const BasicOperator<Real>& a) {
  return BasicOperator<Real>(std::complex<Real>(s) * a.matrix(), a.dims());
}

template <typename Real>
BasicOperator<Real> adjoint(const BasicOperator<Real>& a) {
  return BasicOperator<Real>(a.matrix().adjoint(), a.dims());
}

template <typename DerivedA, typename DerivedB>
auto commutator(const Eigen::MatrixBase<DerivedA>& a,
                const Eigen::MatrixBase<DerivedB>& b) {
  return (a * b - b * a).eval();
}

/// Largest entry modulus.
template <typename Derived>
double max_norm(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : static_cast<double>(m.cwiseAbs().maxCoeff());
}

template <typename Derived>
double hermiticity_error(const Eigen::MatrixBase<Derived>& m) {
  return max_norm(m - m.adjoint());
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m,
                  double tol = numerics().hermiticity_tol) {
  return m.rows() == m.cols() && hermiticity_error(m) <= tol;
}

template <typename Derived>
double unitarity_error(const Eigen::MatrixBase<Derived>& u) {
  using M = typename Derived::PlainObject;
  return max_norm(u.adjoint() * u - M::Identity(u.rows(), u.cols()));
}

// ---------------------------------------------------------------------------
// Matrix exponentials.

/// exp(-i h t) for Hermitian h via the spectral decomposition h = V diag(l) V^+.
template <typename Derived>
typename Derived::PlainObject expm_skew_hermitian(
    const Eigen::MatrixBase<Derived>& h, double t) {
  using Plain = typename Derived::PlainObject;
  using Scalar = typename Derived::Scalar;
  if (!is_hermitian(h)) {
    throw InvalidHamiltonian("expm_skew_hermitian: generator is not Hermitian");
  }
  const Plain herm = (h + h.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Plain> eig(herm);
  const auto& v = eig.eigenvectors();
  auto phases = (Scalar(0, -t) * eig.eigenvalues().template cast<Scalar>())
                    .array()
                    .exp()
                    .matrix();
  return v * phases.asDiagonal() * v.adjoint();
}

template <typename Real>
BasicOperator<Real> expm_skew_hermitian(const BasicOperator<Real>& h,
                                        double t) {
  return BasicOperator<Real>(expm_skew_hermitian(h.matrix(), t), h.dims());
}

namespace detail {

// Pade coefficients b_0..b_m of the [m/m] approximant to exp.
inline constexpr std::array<double, 4> kPade3 = {120., 60., 12., 1.};
inline constexpr std::array<double, 6> kPade5 = {30240., 15120., 3360.,
                                                 420.,   30.,    1.};
inline constexpr std::array<double, 8> kPade7 = {
    17297280., 8648640., 1995840., 277200., 25200., 1512., 56., 1.};
inline constexpr std::array<double, 10> kPade9 = {
    17643225600., 8821612800., 2075673600., 302702400., 30270240.,
    2162160.,     110880.,     3960.,       90.,        1.};
inline constexpr std::array<double, 14> kPade13 = {
    64764752532480000., 32382376266240000., 7771770303897600.,
    1187353796428800.,  129060195264000.,   10559470521600.,
    670442572800.,      33522128640.,       1323241920.,
    40840800.,          960960.,            16380.,
    182.,               1.};

// Largest 1-norm for which the [m/m] approximant is accurate to unit
// roundoff in double precision.
inline constexpr double kTheta3 = 1.495585217958292e-2;
inline constexpr double kTheta5 = 2.539398330063230e-1;
inline constexpr double kTheta7 = 9.504178996162932e-1;
inline constexpr double kTheta9 = 2.097847961257068e0;
inline constexpr double kTheta13 = 5.371920351148152e0;

template <typename Matrix, std::size_t N>
Matrix pade_low_degree(const Matrix& a, const std::array<double, N>& b) {
  const Eigen::Index n = a.rows();
  const Matrix ident = Matrix::Identity(n, n);
  const Matrix a2 = a * a;
  // Horner in a2: U = A * sum_k b_{2k+1} A^{2k}, V = sum_k b_{2k} A^{2k}.
  Matrix odd_sum = b[N - 1] * ident;
  Matrix even_sum = b[N - 2] * ident;
  for (std::size_t k = N - 1; k >= 3; k -= 2) {
    odd_sum = a2 * odd_sum + b[k - 2] * ident;
    even_sum = a2 * even_sum + b[k - 3] * ident;
  }
  const Matrix u = a * odd_sum;
  return (even_sum - u).partialPivLu().solve(even_sum + u);
}

template <typename Matrix>
Matrix pade13(const Matrix& a) {
  const auto& b = kPade13;
  const Eigen::Index n = a.rows();
  const Matrix ident = Matrix::Identity(n, n);
  const Matrix a2 = a * a;
  const Matrix a4 = a2 * a2;
  const Matrix a6 = a4 * a2;
  const Matrix u =
      a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 +
           b[5] * a4 + b[3] * a2 + b[1] * ident);
  const Matrix v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 +
                   b[4] * a4 + b[2] * a2 + b[0] * ident;
  return (v - u).partialPivLu().solve(v + u);
}

}  // namespace detail

/// Matrix exponential of a general complex matrix by scaling and squaring
/// with a diagonal Pade approximant (degree chosen from the 1-norm).
template <typename Derived>
typename Derived::PlainObject expm_general(const Eigen::MatrixBase<Derived>& a) {
  using Plain = typename Derived::PlainObject;
  const Plain m = a;
  if (m.rows() != m.cols()) throw DimensionError("expm_general: not square");
  const double norm1 =
      m.size() == 0 ? 0.0
                    : static_cast<double>(m.cwiseAbs().colwise().sum().maxCoeff());
  if (norm1 <= detail::kTheta3) return detail::pade_low_degree(m, detail::kPade3);
  if (norm1 <= detail::kTheta5) return detail::pade_low_degree(m, detail::kPade5);
  if (norm1 <= detail::kTheta7) return detail::pade_low_degree(m, detail::kPade7);
  if (norm1 <= detail::kTheta9) return detail::pade_low_degree(m, detail::kPade9);
  int squarings = 0;
  if (norm1 > detail::kTheta13) {
    squarings = std::max(0, static_cast<int>(std::ceil(
                                std::log2(norm1 / detail::kTheta13))));
  }
  const Plain scaled = m / std::ldexp(1.0, squarings);
  Plain r = detail::pade13(scaled);
  for (int k = 0; k < squarings; ++k) r = (r * r).eval();
  return r;
}

template <typename Real>
BasicOperator<Real> expm_general(const BasicOperator<Real>& a) {
  return BasicOperator<Real>(expm_general(a.matrix()), a.dims());
}

// ---------------------------------------------------------------------------
// Partial trace and thermal states.

/// Reduced operator on the subsystems listed in `keep` (any order; result
/// keeps them in ascending order). Requires a dims factorization.
template <typename Real>
BasicOperator<Real> partial_trace(const BasicOperator<Real>& rho,
                                  std::vector<std::size_t> keep) {
  if (!rho.has_factorization()) {
    throw DimensionError("partial_trace: operator has no dims factorization");
  }
  const auto& dims = rho.dims();
  const std::size_t nsub = dims.size();
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  for (auto k : keep) {
    if (k >= nsub) throw DimensionError("partial_trace: subsystem index out of range");
  }
  std::vector<std::size_t> traced;
  for (std::size_t s = 0; s < nsub; ++s) {
    if (!std::binary_search(keep.begin(), keep.end(), s)) traced.push_back(s);
  }

  // Row-major strides of the full index.
  std::vector<Eigen::Index> stride(nsub, 1);
  for (std::size_t s = nsub; s-- > 1;) stride[s - 1] = stride[s] * dims[s];

  auto offsets = [&](const std::vector<std::size_t>& subs) {
    Eigen::Index count = 1;
    for (auto s : subs) count *= dims[s];
    std::vector<Eigen::Index> off(static_cast<std::size_t>(count), 0);
    for (Eigen::Index flat = 0; flat < count; ++flat) {
      Eigen::Index rem = flat;
      Eigen::Index o = 0;
      for (std::size_t k = subs.size(); k-- > 0;) {
        const auto s = subs[k];
        o += (rem % dims[s]) * stride[s];
        rem /= dims[s];
      }
      off[static_cast<std::size_t>(flat)] = o;
    }
    return off;
  };
  const auto keep_off = offsets(keep);
  const auto trace_off = offsets(traced);

  const auto nk = static_cast<Eigen::Index>(keep_off.size());
  BasicMatrix<Real> out = BasicMatrix<Real>::Zero(nk, nk);
  for (Eigen::Index i = 0; i < nk; ++i) {
    for (Eigen::Index j = 0; j < nk; ++j) {
      std::complex<Real> acc(0);
      for (auto t : trace_off) {
        acc += rho(keep_off[static_cast<std::size_t>(i)] + t,
                   keep_off[static_cast<std::size_t>(j)] + t);
      }
      out(i, j) = acc;
    }
  }
  std::vector<Eigen::Index> out_dims;
  for (auto k : keep) out_dims.push_back(dims[k]);
  if (out_dims.empty()) out_dims.push_back(1);
  return BasicOperator<Real>(std::move(out), std::move(out_dims));
}

/// Boltzmann weights exp(-n * omega_over_kT), n = 0..n_max-1, renormalized
/// after truncation. omega_over_kT = +inf gives the ground state.
inline Eigen::VectorXd thermal_weights(double omega_over_kT, Eigen::Index n_max) {
  if (!(omega_over_kT > 0.0)) {
    throw DomainError("thermal_weights: omega/kT must be positive");
  }
  if (n_max < 1) throw DomainError("thermal_weights: n_max must be >= 1");
  Eigen::VectorXd w = Eigen::VectorXd::Zero(n_max);
  if (std::isinf(omega_over_kT)) {
    w(0) = 1.0;
    return w;
  }
  for (Eigen::Index n = 0; n < n_max; ++n) {
    w(n) = std::exp(-static_cast<double>(n) * omega_over_kT);
  }
  return w / w.sum();
}

template <typename Real = double>
BasicOperator<Real> thermal_state(double omega_over_kT, Eigen::Index n_max) {
  const Eigen::VectorXd w = thermal_weights(omega_over_kT, n_max);
  BasicMatrix<Real> m = BasicMatrix<Real>::Zero(n_max, n_max);
  for (Eigen::Index n = 0; n < n_max; ++n) m(n, n) = static_cast<Real>(w(n));
  return BasicOperator<Real>(std::move(m), {n_max});
}

/// Projector |k><k| onto the computational basis state with index k.
inline Ket basis_ket(Eigen::Index dim, Eigen::Index k) {
  Ket v = Ket::Zero(dim);
  v(k) = 1.0;
  return v;
}

}  // namespace robust_iswap
