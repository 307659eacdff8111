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

// Pulse parameterizations, sampling and the versioned JSON pulse format.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "robust_iswap/hamiltonians.hpp"

namespace robust_iswap {

/// Fidelity, robustness and total cost C = 1 - F + R of one evaluation.
struct CostBreakdown {
  double fidelity = 0.0;
  double robustness = 0.0;
  double cost = 0.0;

  static CostBreakdown from(double fidelity, double robustness) {
    return {fidelity, robustness, 1.0 - fidelity + robustness};
  }
};

/// Robustness of a single prepared state: the plain squared norm of the
/// first-order state, or its part orthogonal to the zeroth-order state
/// (the extended robustness at its optimal alpha).
enum class StateRobustness { Plain, Extended };

/// Angles (theta, phi, lambda) of one single-qubit rotation.
struct RotationAngles {
  double theta = 0.0;
  double phi = 0.0;
  double lambda = 0.0;
};

/// Terminal frame rotations: one shared triple (Global, detuned) or one
/// per qubit (full-local).
struct FrameAngles {
  std::vector<RotationAngles> triples{RotationAngles{}};

  static FrameAngles identity(LayoutKind kind);
  bool shared() const { return triples.size() == 1; }
  const RotationAngles& qubit(int q) const;
};

struct PiecewiseBasis {
  /// values[channel][step].
  std::vector<std::vector<double>> values;
  Eigen::Index steps() const;
};

struct ChebyshevBasis {
  /// coeffs[channel][n], n = 0..order.
  std::vector<std::vector<double>> coeffs;
  int order() const;
};

struct PulseMetadata {
  std::optional<CostBreakdown> cost;
  std::optional<std::uint64_t> seed;
  std::optional<int> iterations;
  std::optional<bool> converged;
  std::optional<Eigen::Index> sampling_steps;
  std::map<std::string, std::string> notes;
};

struct Pulse {
  ControlLayout layout;
  double duration = 0.0;
  std::variant<PiecewiseBasis, ChebyshevBasis> basis;
  FrameAngles frames;
  PulseMetadata metadata;

  bool is_piecewise() const { return basis.index() == 0; }
  /// Throws DomainError / DimensionError when invariants fail.
  void validate() const;
};

/// Zero-control pulse of the given duration (one step) with identity frames.
Pulse native_pulse(const ControlLayout& layout, double duration);

/// Default dense grid for Chebyshev pulses.
inline constexpr Eigen::Index kDefaultSamplingSteps = 1000;

/// Sum_n c_n T_n(x) with x = 2t/T - 1, Clenshaw recurrence.
double chebyshev_eval(const std::vector<double>& coeffs, double t,
                      double duration);

/// T_0(x)..T_order(x).
Eigen::VectorXd chebyshev_values(int order, double x);

/// dT_n/dx = n U_{n-1}(x) for n = 0..order.
Eigen::VectorXd chebyshev_derivative_values(int order, double x);

/// Midpoint-sampled piecewise pulse. Piecewise input is returned unchanged
/// when `steps` matches its grid.
Pulse sample_to_piecewise(const Pulse& p, Eigen::Index steps);

/// Controls on the propagation grid: channels x steps. Chebyshev pulses are
/// sampled at `sampling_steps`; piecewise pulses use their own grid.
Eigen::MatrixXd control_samples(const Pulse& p,
                                Eigen::Index sampling_steps = kDefaultSamplingSteps);

/// Smooth pulses propagate with the fourth-order commutator-free Magnus
/// scheme. Each of the N sampling steps is split into two sub-steps of length
/// dt/2 with control Hamiltonians w0 H(t_a) + w1 H(t_b), then w1 H(t_a) +
/// w0 H(t_b), where t_a < t_b are the Gauss-Legendre nodes of the step.
inline constexpr double kMagnusNodes[2] = {0.21132486540518711775, 0.78867513459481288225};
inline constexpr double kMagnusWeights[2] = {1.07735026918962576451, -0.07735026918962576451};

/// Chebyshev controls at the two Gauss nodes of every sampling step:
/// channels x 2N, columns (t_a, t_b) per step.
Eigen::MatrixXd gauss_node_samples(const Pulse& p, Eigen::Index sampling_steps);

/// Flips negative amplitudes to positive with phase + pi and wraps phases to
/// (-pi, pi]. Piecewise pulses only.
Pulse canonicalize_amplitudes(const Pulse& p);

/// Largest |Omega| over the propagation grid.
double max_amplitude(const Pulse& p,
                     Eigen::Index sampling_steps = kDefaultSamplingSteps);

inline constexpr const char* kPulseFormatVersion = "1";

std::string pulse_to_json(const Pulse& p);
Pulse pulse_from_json(const std::string& text);
void write_pulse(const Pulse& p, const std::string& path);
Pulse read_pulse(const std::string& path);

/// CSV "t,omega1,phi1[,omega2,phi2][,delta]" sampled at step midpoints.
void write_waveform_csv(const Pulse& p, std::ostream& out,
                        Eigen::Index sampling_steps = kDefaultSamplingSteps);

}  // namespace robust_iswap
