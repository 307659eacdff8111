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

#include "robust_iswap/control_problem.hpp"

#include <cmath>
#include <random>
#include <vector>

#include "robust_iswap/objectives.hpp"
#include "robust_iswap/step_exponential.hpp"

namespace robust_iswap {

namespace {

using States = Eigen::Matrix<Complex, 4, Eigen::Dynamic>;

Matrix4cd kron4(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Matrix4cd out;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  }
  return out;
}

double re_trace_product(const Matrix4cd& a, const Matrix4cd& b) {
  return (a.array() * b.transpose().array()).real().sum();
}

}  // namespace

ControlProblem::ControlProblem(ProblemSpec spec) : spec_(std::move(spec)) {
  spec_.layout.validate();
  if (!(spec_.duration > 0.0)) throw DomainError("problem duration must be positive");
  if (spec_.steps < 1) throw DomainError("problem needs >= 1 step");
  const Eigen::Index nch = spec_.layout.channels();
  if (spec_.basis == ParameterBasis::Piecewise) {
    num_controls_ = nch * spec_.steps;
  } else {
    if (spec_.order < 0) throw DomainError("chebyshev order must be >= 0");
    num_controls_ = nch * (spec_.order + 1);
    // Controls live on the two Gauss nodes of every sampling step.
    cheb_.resize(spec_.order + 1, 2 * spec_.steps);
    dcheb_.resize(spec_.order + 1, 2 * spec_.steps);
    for (Eigen::Index i = 0; i < spec_.steps; ++i) {
      for (int k = 0; k < 2; ++k) {
        const double x =
            2.0 * (static_cast<double>(i) + kMagnusNodes[k]) / static_cast<double>(spec_.steps) - 1.0;
        cheb_.col(2 * i + k) = chebyshev_values(spec_.order, x);
        dcheb_.col(2 * i + k) = (2.0 / spec_.duration) * chebyshev_derivative_values(spec_.order, x);
      }
    }
  }
  noise_ = spec_.noise ? *spec_.noise : Matrix4cd(first_order_hamiltonian().matrix());
  if (spec_.mode == CostMode::Gate) {
    targets_unframed_ = spec_.target;
    initial_ = Matrix4cd::Identity();
  } else {
    targets_unframed_ = spec_.target_state ? *spec_.target_state
                                           : Vector4cd(spec_.target * spec_.initial);
    initial_ = spec_.initial;
  }
}

Eigen::MatrixXd ControlProblem::controls(const Eigen::VectorXd& x) const {
  if (x.size() != num_parameters()) throw DimensionError("parameter vector has wrong size");
  const int nch = spec_.layout.channels();
  Eigen::MatrixXd u(nch, spec_.basis == ParameterBasis::Piecewise ? spec_.steps : 2 * spec_.steps);
  const double wmax = spec_.layout.omega_max;
  for (int c = 0; c < nch; ++c) {
    const bool amplitude = c % 2 == 0;
    if (spec_.basis == ParameterBasis::Piecewise) {
      for (Eigen::Index i = 0; i < spec_.steps; ++i) {
        const double w = x(c * spec_.steps + i);
        u(c, i) = amplitude ? wmax * std::tanh(w / wmax) : w;
      }
    } else {
      const Eigen::Index m = spec_.order + 1;
      u.row(c) = x.segment(c * m, m).transpose() * cheb_;
    }
  }
  return u;
}

FrameAngles ControlProblem::frames(const Eigen::VectorXd& x) const {
  FrameAngles f;
  f.triples.clear();
  for (int t = 0; t < spec_.layout.frame_triples(); ++t) {
    const Eigen::Index o = num_controls_ + 3 * t;
    f.triples.push_back({x(o), x(o + 1), x(o + 2)});
  }
  return f;
}

double ControlProblem::evaluate(const Eigen::VectorXd& x, Eigen::VectorXd* grad,
                                CostBreakdown* breakdown) const {
  const Eigen::MatrixXd u = controls(x);
  const FrameAngles fr = frames(x);
  // Piecewise: one exponential per step. Chebyshev: two Magnus sub-steps per
  // sampling step, sub-step i mixing control columns i and i ^ 1.
  const bool magnus = spec_.basis == ParameterBasis::Chebyshev;
  const Eigen::Index n = u.cols();
  const double dt = spec_.duration / static_cast<double>(n);
  const int nch = spec_.layout.channels();
  const Matrix4cd h0 = spec_.j * Matrix4cd(first_order_hamiltonian().matrix());
  const auto k = static_cast<double>(initial_.cols());
  std::vector<Matrix4cd> hc(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::VectorXd ch = u.col(i);
    hc[static_cast<std::size_t>(i)] = control_matrix(spec_.layout, ch.data());
  }
  auto weight = [](Eigen::Index sub, Eigen::Index col) {
    return kMagnusWeights[(sub ^ col) & 1];
  };

  std::vector<StepExponential> steps(static_cast<std::size_t>(n));
  std::vector<States> psi0(static_cast<std::size_t>(n) + 1);
  std::vector<States> psi1(static_cast<std::size_t>(n) + 1);
  psi0[0] = initial_;
  psi1[0] = States::Zero(4, initial_.cols());
  for (Eigen::Index i = 0; i < n; ++i) {
    Matrix4cd h = h0;
    if (magnus) {
      const Eigen::Index a = i & ~Eigen::Index{1};
      h += weight(i, a) * hc[static_cast<std::size_t>(a)] +
           weight(i, a + 1) * hc[static_cast<std::size_t>(a + 1)];
    } else {
      h += hc[static_cast<std::size_t>(i)];
    }
    auto& st = steps[static_cast<std::size_t>(i)];
    st.compute(h, noise_, dt);
    const auto s = static_cast<std::size_t>(i);
    psi0[s + 1] = st.u * psi0[s];
    psi1[s + 1] = st.u * psi1[s] + st.v * psi0[s];
  }
  const States& final0 = psi0.back();
  const States& final1 = psi1.back();

  const Matrix4cd frame_op = frame_operator(fr);
  const States target = frame_op * targets_unframed_;
  const Complex tau = (target.adjoint() * final0).trace();
  const double fidelity = std::norm(tau) / (k * k);
  double robust = final1.squaredNorm();
  // Extended state robustness: only the part of psi1 orthogonal to psi0.
  const bool extended =
      spec_.mode == CostMode::State && spec_.state_robustness == StateRobustness::Extended;
  Complex sigma(0.0);
  if (extended) {
    sigma = final0.col(0).dot(final1.col(0));
    robust -= std::norm(sigma);
  }
  const CostBreakdown cb = CostBreakdown::from(fidelity, robust);
  if (breakdown != nullptr) *breakdown = cb;

  // Hinge penalties on the sampled values (pen_grad) and slopes (slope_grad).
  double penalty = 0.0;
  Eigen::MatrixXd pen_grad, slope_grad;
  auto hinge = [&](double v, double bound, double& g) {
    const double excess = std::abs(v) - bound;
    if (excess > 0.0) {
      penalty += spec_.penalty_weight * excess * excess;
      g = 2.0 * spec_.penalty_weight * excess * (v > 0 ? 1.0 : -1.0);
    }
  };
  if (spec_.basis == ParameterBasis::Chebyshev) {
    pen_grad = Eigen::MatrixXd::Zero(nch, n);
    slope_grad = Eigen::MatrixXd::Zero(nch, n);
    const Eigen::Index m = spec_.order + 1;
    for (int c = 0; c < nch; ++c) {
      const bool amplitude = c % 2 == 0;
      const double rate_max = amplitude ? spec_.amplitude_rate_max : spec_.phase_rate_max;
      const bool rate_bounded = std::isfinite(rate_max);
      Eigen::RowVectorXd slope;
      if (rate_bounded) slope = x.segment(c * m, m).transpose() * dcheb_;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (amplitude) hinge(u(c, i), spec_.layout.omega_max, pen_grad(c, i));
        if (rate_bounded) hinge(slope(i), rate_max, slope_grad(c, i));
      }
    }
  }
  const double objective = cb.cost + penalty;
  if (grad == nullptr) return objective;

  grad->setZero(num_parameters());
  // d cost / d controls, channels x steps.
  Eigen::MatrixXd gu = Eigen::MatrixXd::Zero(nch, n);
  States lam0 = (-2.0 / (k * k)) * tau * target;
  States lam1 = 2.0 * final1;
  if (extended) {
    lam0 -= 2.0 * std::conj(sigma) * final1;
    lam1 -= 2.0 * sigma * final0;
  }
  Matrix4cd dh[4];
  for (Eigen::Index i = n; i-- > 0;) {
    const auto s = static_cast<std::size_t>(i);
    const auto& st = steps[s];
    const Matrix4cd mu = psi0[s] * lam0.adjoint() + psi1[s] * lam1.adjoint();
    const Matrix4cd mv = psi0[s] * lam1.adjoint();
    const Matrix4cd sens = st.sensitivity(mu, mv);
    if (magnus) {
      const Eigen::Index a = i & ~Eigen::Index{1};
      for (Eigen::Index col = a; col < a + 2; ++col) {
        const Eigen::VectorXd ch = u.col(col);
        control_derivatives(spec_.layout, ch.data(), dh);
        const double w = weight(i, col);
        for (int c = 0; c < nch; ++c) gu(c, col) += w * re_trace_product(dh[c], sens);
      }
    } else {
      const Eigen::VectorXd ch = u.col(i);
      control_derivatives(spec_.layout, ch.data(), dh);
      for (int c = 0; c < nch; ++c) gu(c, i) = re_trace_product(dh[c], sens);
    }
    lam0 = (st.u.adjoint() * lam0 + st.v.adjoint() * lam1).eval();
    lam1 = (st.u.adjoint() * lam1).eval();
  }

  const double wmax = spec_.layout.omega_max;
  for (int c = 0; c < nch; ++c) {
    const bool amplitude = c % 2 == 0;
    if (spec_.basis == ParameterBasis::Piecewise) {
      for (Eigen::Index i = 0; i < n; ++i) {
        double g = gu(c, i);
        if (amplitude) {
          const double th = std::tanh(x(c * n + i) / wmax);
          g *= 1.0 - th * th;
        }
        (*grad)(c * n + i) = g;
      }
    } else {
      const Eigen::Index m = spec_.order + 1;
      grad->segment(c * m, m) = cheb_ * (gu.row(c) + pen_grad.row(c)).transpose() +
                                dcheb_ * slope_grad.row(c).transpose();
    }
  }

  // Frame angles: dC = -2 Re(tau* Tr(dT^+ psi0)) / K^2.
  const int triples = spec_.layout.frame_triples();
  std::array<Eigen::Matrix2cd, 2> r = {rotation_matrix(fr.qubit(0)), rotation_matrix(fr.qubit(1))};
  for (int t = 0; t < triples; ++t) {
    const auto dr = rotation_derivatives(fr.triples[static_cast<std::size_t>(t)]);
    for (int a = 0; a < 3; ++a) {
      Matrix4cd dframe;
      if (triples == 1) {
        dframe = kron4(dr[a], r[1]) + kron4(r[0], dr[a]);
      } else if (t == 0) {
        dframe = kron4(dr[a], r[1]);
      } else {
        dframe = kron4(r[0], dr[a]);
      }
      const Complex dtau = ((dframe * targets_unframed_).adjoint() * final0).trace();
      (*grad)(num_controls_ + 3 * t + a) = -2.0 * (std::conj(tau) * dtau).real() / (k * k);
    }
  }
  return objective;
}

Pulse ControlProblem::to_pulse(const Eigen::VectorXd& x) const {
  Pulse p;
  p.layout = spec_.layout;
  p.duration = spec_.duration;
  p.frames = frames(x);
  const int nch = spec_.layout.channels();
  if (spec_.basis == ParameterBasis::Piecewise) {
    const Eigen::MatrixXd u = controls(x);
    PiecewiseBasis pw;
    for (int c = 0; c < nch; ++c) {
      pw.values.emplace_back(static_cast<std::size_t>(spec_.steps));
      for (Eigen::Index i = 0; i < spec_.steps; ++i) {
        pw.values.back()[static_cast<std::size_t>(i)] = u(c, i);
      }
    }
    p.basis = pw;
  } else {
    ChebyshevBasis cb;
    const Eigen::Index m = spec_.order + 1;
    for (int c = 0; c < nch; ++c) {
      cb.coeffs.emplace_back(static_cast<std::size_t>(m));
      for (Eigen::Index j = 0; j < m; ++j) {
        cb.coeffs.back()[static_cast<std::size_t>(j)] = x(c * m + j);
      }
    }
    p.basis = cb;
    p.metadata.sampling_steps = spec_.steps;
  }
  return p;
}

Eigen::VectorXd ControlProblem::from_pulse(const Pulse& pulse) const {
  pulse.validate();
  if (pulse.layout.kind != spec_.layout.kind) {
    throw DimensionError("from_pulse: layout differs from the problem");
  }
  Eigen::VectorXd x = Eigen::VectorXd::Zero(num_parameters());
  const int nch = spec_.layout.channels();
  if (spec_.basis == ParameterBasis::Piecewise) {
    const Pulse pw_pulse = sample_to_piecewise(pulse, spec_.steps);
    const auto& pw = std::get<PiecewiseBasis>(pw_pulse.basis);
    const double wmax = spec_.layout.omega_max;
    for (int c = 0; c < nch; ++c) {
      for (Eigen::Index i = 0; i < spec_.steps; ++i) {
        double v = pw.values[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)];
        if (c % 2 == 0) {
          const double ratio = std::clamp(v / wmax, -1.0 + 1e-12, 1.0 - 1e-12);
          v = wmax * std::atanh(ratio);
        }
        x(c * spec_.steps + i) = v;
      }
    }
  } else {
    const auto* cb = std::get_if<ChebyshevBasis>(&pulse.basis);
    if (cb == nullptr) throw DomainError("from_pulse: Chebyshev problem needs a Chebyshev pulse");
    const Eigen::Index m = spec_.order + 1;
    for (int c = 0; c < nch; ++c) {
      const auto& src = cb->coeffs[static_cast<std::size_t>(c)];
      for (Eigen::Index j = 0; j < m && j < static_cast<Eigen::Index>(src.size()); ++j) {
        x(c * m + j) = src[static_cast<std::size_t>(j)];
      }
    }
  }
  for (int t = 0; t < spec_.layout.frame_triples(); ++t) {
    const auto& r = pulse.frames.qubit(t);
    x(num_controls_ + 3 * t) = r.theta;
    x(num_controls_ + 3 * t + 1) = r.phi;
    x(num_controls_ + 3 * t + 2) = r.lambda;
  }
  return x;
}

Eigen::VectorXd ControlProblem::random_parameters(std::uint64_t seed, double amplitude_scale,
                                                  double angle_scale) const {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-0.5, 0.5);
  Eigen::VectorXd x(num_parameters());
  const int nch = spec_.layout.channels();
  const Eigen::Index per = num_controls_ / nch;
  const bool cheb = spec_.basis == ParameterBasis::Chebyshev;
  for (int c = 0; c < nch; ++c) {
    const double scale = c % 2 == 0 ? amplitude_scale : angle_scale;
    for (Eigen::Index i = 0; i < per; ++i) {
      // T_n has slope up to n^2 at the interval ends; damp high orders so the
      // starting waveform is resolved by the sampling grid.
      const double damp = cheb ? 1.0 / static_cast<double>((i + 1) * (i + 1)) : 1.0;
      x(c * per + i) = damp * scale * unit(rng);
    }
  }
  for (Eigen::Index i = num_controls_; i < x.size(); ++i) x(i) = angle_scale * unit(rng);
  return x;
}

}  // namespace robust_iswap
