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

// Quasi-static Delta J sweeps, closed-form native oracles, the full
// rotational (x) motional simulation and the Ramsey dephasing model.

#include <cstdint>
#include <ostream>
#include <vector>

#include "robust_iswap/motion.hpp"
#include "robust_iswap/operators.hpp"
#include "robust_iswap/pulses.hpp"

namespace robust_iswap {

struct SweepSpec {
  std::vector<double> dj_values;  // Delta J / J
  Pulse pulse;
  Eigen::Index sampling_steps = kDefaultSamplingSteps;
};

struct SweepPoint {
  double dj = 0.0;
  double infidelity = 0.0;
};

/// 81 points in [-0.2, 0.2].
std::vector<double> default_sweep_grid();

/// 1 - F (four-state gate fidelity) at J (1 + dj), pulse frames fixed.
std::vector<SweepPoint> sweep_infidelity(const SweepSpec& spec, const Operator& target);

/// 1 - |<target| R psi(T)>|^2 for one initial state at J (1 + dj).
std::vector<SweepPoint> sweep_state_infidelity(const SweepSpec& spec, const Ket& initial,
                                               const Ket& target_state);

/// 1 - (2 + 2 cos(pi eps / 2))^2 / 16.
double native_infidelity_oracle(double epsilon);

/// 1 - cos^2(pi eps / 4).
double bell_prep_infidelity_oracle(double epsilon);

struct MotionalSimSpec {
  MotionalModel model;
  Pulse pulse;
  Eigen::Index sampling_steps = kDefaultSamplingSteps;
  Eigen::Index dimension_cap = 4096;
  /// Use the pulse's frame angles for the target; identity frames otherwise.
  bool apply_frames = true;
};

/// 1 - sum_p b_p (1/16) || sum_q (<t_q| (x) I) U (|q> (x) |p>) ||^2, with
/// thermal weights b_p over the joint motional levels and framed target
/// columns t_q.
double simulate_with_motion(const MotionalSimSpec& spec, const Operator& target);

/// (1/2)(1 - exp(-t^2 sigma^2 / 2) cos(J t)).
double ramsey_analytic(double j, double sigma_j, double t);

struct RamseyPoint {
  double t = 0.0;
  double p11_mc = 0.0;
  double p11_analytic = 0.0;
};

/// Mean of (1/2)(1 - cos((J + dJ) t)) over dJ ~ N(0, sigma^2). Each batch of
/// samples owns an RNG stream seeded from (seed, batch), so results do not
/// depend on the thread count.
std::vector<RamseyPoint> ramsey_monte_carlo(double j, double sigma_j,
                                            const std::vector<double>& t_grid,
                                            std::uint64_t samples, std::uint64_t seed,
                                            int threads = 1);

/// 1/e time of the envelope exp(-t^2 / T2^2), fitted by least squares of
/// log|envelope| against t^2 on points with |cos(J t)| > 0.9.
double fit_dephasing_time(const std::vector<RamseyPoint>& points, double j);

void write_sweep_csv(const std::vector<SweepPoint>& points, std::ostream& out);

struct MotionRow {
  double omega_over_j = 0.0;
  double infidelity_native = 0.0;
  double infidelity_robust = 0.0;
};
void write_motion_csv(const std::vector<MotionRow>& rows, std::ostream& out);

void write_ramsey_csv(const std::vector<RamseyPoint>& points, std::ostream& out);

}  // namespace robust_iswap
