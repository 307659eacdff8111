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

// Pulse synthesis: GRAPE over piecewise-constant controls, Chebyshev
// coefficient optimization, Bell-state preparation and critical-time scans.

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "robust_iswap/control_problem.hpp"
#include "robust_iswap/pulses.hpp"

namespace robust_iswap {

struct OptimizationConfig {
  int max_iterations = 20000;
  double gradient_tolerance = 1e-13;
  double cost_tolerance = 1e-10;
  int restarts = 10;
  std::uint64_t seed = 1;
  double omega_max = 50.0;
  /// UniformRandom initialization scales.
  double amplitude_scale = 1.0;
  double angle_scale = M_PI;
  /// FromPulse initialization; used for the first restart only.
  std::optional<Pulse> warm_start;
  /// Skip the remaining restarts once one converges.
  bool stop_at_first_converged = true;
  int threads = 1;

  void validate() const;
};

struct OptimizationResult {
  Pulse pulse;
  std::vector<CostBreakdown> cost_trace;  // best restart, one entry per iteration
  bool converged = false;
  int iterations = 0;
  CostBreakdown best;
  std::uint64_t seed = 0;
  int restarts_run = 0;
};

/// Runs restarts of BFGS on any control problem. Returns the lowest-index
/// converged restart, or the lowest-cost one when none converged.
OptimizationResult optimize_problem(const ControlProblem& problem,
                                    const OptimizationConfig& cfg);

struct GateProblem {
  ControlLayout layout;
  Matrix4cd target = iswap_matrix();
  double duration = 4.5;
  Eigen::Index steps = 90;
};

OptimizationResult grape_optimize(const GateProblem& problem, const OptimizationConfig& cfg);

struct ChebyshevProblem {
  ControlLayout layout;
  Matrix4cd target = iswap_matrix();
  double duration = 4.5;
  int order = 20;
  Eigen::Index sampling_steps = kDefaultSamplingSteps;
  /// Each restart first converges on this coarser grid, then polishes on
  /// sampling_steps. Zero disables.
  Eigen::Index coarse_steps = 200;
  /// Slope bounds, see ProblemSpec.
  double amplitude_rate_max = std::numeric_limits<double>::infinity();
  double phase_rate_max = std::numeric_limits<double>::infinity();
};

OptimizationResult chebyshev_optimize(const ChebyshevProblem& problem,
                                      const OptimizationConfig& cfg);

/// Duration continuation: solves at start_duration with cfg, then shortens
/// the gate by step down to problem.duration. Each stage warm-starts from the
/// previous pulse with amplitudes scaled by T_old / T_new and runs one
/// restart. Stops early when a stage fails to converge.
OptimizationResult chebyshev_continuation(const ChebyshevProblem& problem,
                                          double start_duration, double step,
                                          const OptimizationConfig& cfg);

/// Global layout, initial |++>, target iSWAP |++>, single-state F and R.
OptimizationResult bell_state_optimize(double duration, const OptimizationConfig& cfg,
                                       Eigen::Index steps = 90);

/// Analytic gradient of the problem objective.
Eigen::VectorXd gradient(const ControlProblem& problem, const Eigen::VectorXd& params);

struct ScanPoint {
  double duration = 0.0;
  CostBreakdown best;
  bool converged = false;
};

struct ScanResult {
  std::vector<ScanPoint> points;
  /// Smallest duration whose best cost reached the tolerance.
  std::optional<double> critical_time;
};

/// GRAPE at every duration of an ascending grid, re-seeded per duration.
ScanResult critical_time_scan(const ControlLayout& layout, const std::vector<double>& t_grid,
                              const OptimizationConfig& cfg, Eigen::Index steps = 90);

}  // namespace robust_iswap
