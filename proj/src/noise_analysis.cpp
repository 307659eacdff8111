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

#include "robust_iswap/noise_analysis.hpp"

#include <cmath>
#include <random>
#include <thread>

#include "robust_iswap/objectives.hpp"
#include "robust_iswap/propagation.hpp"

namespace robust_iswap {

namespace {

constexpr std::uint64_t kRamseyBatch = 4096;

Eigen::Index pulse_sampling(const Pulse& p, Eigen::Index fallback) {
  return p.metadata.sampling_steps ? *p.metadata.sampling_steps : fallback;
}

}  // namespace

std::vector<double> default_sweep_grid() {
  std::vector<double> grid;
  for (int i = 0; i <= 80; ++i) grid.push_back(-0.2 + 0.005 * i);
  return grid;
}

std::vector<SweepPoint> sweep_infidelity(const SweepSpec& spec, const Operator& target) {
  const Eigen::Index steps = pulse_sampling(spec.pulse, spec.sampling_steps);
  std::vector<SweepPoint> out;
  for (double dj : spec.dj_values) {
    if (!std::isfinite(dj)) throw DomainError("sweep: dj values must be finite");
    const Operator u = evolve_unitary(spec.pulse, 1.0 + dj, steps);
    std::vector<Ket> states;
    for (Eigen::Index q = 0; q < 4; ++q) states.push_back(u.matrix().col(q));
    out.push_back({dj, 1.0 - bell_fidelity(states, spec.pulse.frames, target)});
  }
  return out;
}

std::vector<SweepPoint> sweep_state_infidelity(const SweepSpec& spec, const Ket& initial,
                                               const Ket& target_state) {
  const Eigen::Index steps = pulse_sampling(spec.pulse, spec.sampling_steps);
  std::vector<SweepPoint> out;
  for (double dj : spec.dj_values) {
    if (!std::isfinite(dj)) throw DomainError("sweep: dj values must be finite");
    const Ket final_state = evolve_unitary(spec.pulse, 1.0 + dj, steps).matrix() * initial;
    out.push_back({dj, 1.0 - state_fidelity(final_state, spec.pulse.frames, target_state)});
  }
  return out;
}

double native_infidelity_oracle(double epsilon) {
  const double tr = 2.0 + 2.0 * std::cos(M_PI * epsilon / 2.0);
  return 1.0 - tr * tr / 16.0;
}

double bell_prep_infidelity_oracle(double epsilon) {
  const double c = std::cos(M_PI * epsilon / 4.0);
  return 1.0 - c * c;
}

double simulate_with_motion(const MotionalSimSpec& spec, const Operator& target) {
  const MotionalModel& m = spec.model;
  m.validate();
  if (m.dim() > spec.dimension_cap) {
    throw DimensionError("simulate_with_motion: dimension " + std::to_string(m.dim()) +
                         " exceeds the cap " + std::to_string(spec.dimension_cap));
  }
  if (target.dim() != 4) throw DimensionError("simulate_with_motion: target must be 4x4");
  const Eigen::Index nm = m.n_max * m.n_max;
  const Eigen::Index dim = 4 * nm;
  const Eigen::MatrixXcd h_static = motion_modulated_exchange({1.0}, m).matrix();
  const Eigen::Index sampling = pulse_sampling(spec.pulse, spec.sampling_steps);
  // Control parts only: the exchange term comes from h_static.
  const std::vector<Matrix4cd> controls = step_hamiltonians(spec.pulse, 0.0, sampling);
  const double dt = pulse_grid(spec.pulse, sampling).dt();

  Eigen::MatrixXcd total = Eigen::MatrixXcd::Identity(dim, dim);
  Matrix4cd last;
  Eigen::MatrixXcd step_u;
  for (std::size_t i = 0; i < controls.size(); ++i) {
    const Matrix4cd& hc = controls[i];
    if (i == 0 || hc != last) {
      Eigen::MatrixXcd h = h_static;
      for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
          if (hc(r, c) == Complex(0)) continue;
          h.block(r * nm, c * nm, nm, nm).diagonal().array() += hc(r, c);
        }
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h);
      const Eigen::VectorXcd ph =
          (Complex(0, -dt) * eig.eigenvalues().cast<Complex>()).array().exp();
      step_u = eig.eigenvectors() * ph.asDiagonal() * eig.eigenvectors().adjoint();
      last = hc;
    }
    total = (step_u * total).eval();
  }

  const FrameAngles frames =
      spec.apply_frames ? spec.pulse.frames : FrameAngles::identity(spec.pulse.layout.kind);
  const Matrix4cd framed = frame_operator(frames) * Matrix4cd(target.matrix());
  // M = sum_{q, q'} conj(t_q[q']) U_{q' q}; column p of M is v_p.
  Eigen::MatrixXcd overlap = Eigen::MatrixXcd::Zero(nm, nm);
  for (int q = 0; q < 4; ++q) {
    for (int qp = 0; qp < 4; ++qp) {
      const Complex w = std::conj(framed(qp, q));
      if (w == Complex(0)) continue;
      overlap += w * total.block(qp * nm, q * nm, nm, nm);
    }
  }
  const Eigen::VectorXd b1 = thermal_weights(m.beta_ratio, m.n_max);
  double fidelity = 0.0;
  for (Eigen::Index n1 = 0; n1 < m.n_max; ++n1) {
    for (Eigen::Index n2 = 0; n2 < m.n_max; ++n2) {
      fidelity += b1(n1) * b1(n2) * overlap.col(n1 * m.n_max + n2).squaredNorm() / 16.0;
    }
  }
  return 1.0 - fidelity;
}

double ramsey_analytic(double j, double sigma_j, double t) {
  if (!(sigma_j >= 0.0)) throw DomainError("ramsey: sigma must be >= 0");
  return 0.5 * (1.0 - std::exp(-0.5 * t * t * sigma_j * sigma_j) * std::cos(j * t));
}

std::vector<RamseyPoint> ramsey_monte_carlo(double j, double sigma_j,
                                            const std::vector<double>& t_grid,
                                            std::uint64_t samples, std::uint64_t seed,
                                            int threads) {
  if (samples < 1) throw DomainError("ramsey: samples must be >= 1");
  if (!(sigma_j >= 0.0)) throw DomainError("ramsey: sigma must be >= 0");
  const std::uint64_t batches = (samples + kRamseyBatch - 1) / kRamseyBatch;
  const std::size_t nt = t_grid.size();
  // Per-batch sums, reduced in batch order.
  std::vector<std::vector<double>> sums(batches, std::vector<double>(nt, 0.0));
  auto run_batch = [&](std::uint64_t b) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal(0.0, 1.0);
    const std::uint64_t count = std::min(kRamseyBatch, samples - b * kRamseyBatch);
    auto& acc = sums[b];
    for (std::uint64_t s = 0; s < count; ++s) {
      const double jj = j + sigma_j * normal(rng);
      for (std::size_t k = 0; k < nt; ++k) acc[k] += 0.5 * (1.0 - std::cos(jj * t_grid[k]));
    }
  };
  const auto workers = static_cast<std::uint64_t>(std::max(1, threads));
  if (workers == 1) {
    for (std::uint64_t b = 0; b < batches; ++b) run_batch(b);
  } else {
    std::vector<std::thread> pool;
    for (std::uint64_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::uint64_t b = w; b < batches; b += workers) run_batch(b);
      });
    }
    for (auto& th : pool) th.join();
  }
  std::vector<RamseyPoint> out;
  for (std::size_t k = 0; k < nt; ++k) {
    double total = 0.0;
    for (std::uint64_t b = 0; b < batches; ++b) total += sums[b][k];
    out.push_back({t_grid[k], total / static_cast<double>(samples),
                   ramsey_analytic(j, sigma_j, t_grid[k])});
  }
  return out;
}

double fit_dephasing_time(const std::vector<RamseyPoint>& points, double j) {
  double sxy = 0.0;
  double sxx = 0.0;
  for (const auto& p : points) {
    const double c = std::cos(j * p.t);
    if (std::abs(c) <= 0.9 || p.t <= 0.0) continue;
    const double envelope = (1.0 - 2.0 * p.p11_mc) / c;
    if (envelope <= 0.05) continue;
    const double x = p.t * p.t;
    sxy += x * std::log(envelope);
    sxx += x * x;
  }
  if (sxx == 0.0 || !(sxy < 0.0)) throw DomainError("fit_dephasing_time: no decaying points");
  return 1.0 / std::sqrt(-sxy / sxx);
}

void write_sweep_csv(const std::vector<SweepPoint>& points, std::ostream& out) {
  const auto old = out.precision(17);
  out << "dj_over_j,infidelity\n";
  for (const auto& p : points) out << p.dj << ',' << p.infidelity << '\n';
  out.precision(old);
}

void write_motion_csv(const std::vector<MotionRow>& rows, std::ostream& out) {
  const auto old = out.precision(17);
  out << "omega_over_j,infidelity_native,infidelity_robust\n";
  for (const auto& r : rows) {
    out << r.omega_over_j << ',' << r.infidelity_native << ',' << r.infidelity_robust << '\n';
  }
  out.precision(old);
}

void write_ramsey_csv(const std::vector<RamseyPoint>& points, std::ostream& out) {
  const auto old = out.precision(17);
  out << "t,p11_mc,p11_analytic\n";
  for (const auto& p : points) out << p.t << ',' << p.p11_mc << ',' << p.p11_analytic << '\n';
  out.precision(old);
}

}  // namespace robust_iswap
