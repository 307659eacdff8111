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

#include "robust_iswap/pulses.hpp"

#include <cmath>
#include <iomanip>
#include <limits>

namespace robust_iswap {

FrameAngles FrameAngles::identity(LayoutKind kind) {
  FrameAngles f;
  f.triples.assign(kind == LayoutKind::FullLocal ? 2 : 1, RotationAngles{});
  return f;
}

const RotationAngles& FrameAngles::qubit(int q) const {
  if (triples.empty()) throw DimensionError("frames: no rotation triples");
  return shared() ? triples[0] : triples.at(static_cast<std::size_t>(q));
}

Eigen::Index PiecewiseBasis::steps() const {
  return values.empty() ? 0 : static_cast<Eigen::Index>(values.front().size());
}

int ChebyshevBasis::order() const {
  return coeffs.empty() ? -1 : static_cast<int>(coeffs.front().size()) - 1;
}

void Pulse::validate() const {
  layout.validate();
  if (!(duration > 0.0) || !std::isfinite(duration)) {
    throw DomainError("pulse duration must be positive and finite");
  }
  const auto nch = static_cast<std::size_t>(layout.channels());
  if (static_cast<int>(frames.triples.size()) != layout.frame_triples()) {
    throw DimensionError("frame triple count does not match layout");
  }
  if (const auto* pw = std::get_if<PiecewiseBasis>(&basis)) {
    if (pw->values.size() != nch) throw DimensionError("piecewise channel count");
    if (pw->steps() < 1) throw DimensionError("piecewise pulse needs >= 1 step");
    for (const auto& ch : pw->values) {
      if (static_cast<Eigen::Index>(ch.size()) != pw->steps()) {
        throw DimensionError("piecewise channels differ in length");
      }
    }
  } else {
    const auto& cb = std::get<ChebyshevBasis>(basis);
    if (cb.coeffs.size() != nch) throw DimensionError("chebyshev channel count");
    if (cb.order() < 0) throw DimensionError("chebyshev pulse needs >= 1 coefficient");
    for (const auto& ch : cb.coeffs) {
      if (static_cast<int>(ch.size()) != cb.order() + 1) {
        throw DimensionError("chebyshev channels differ in length");
      }
    }
  }
}

Pulse native_pulse(const ControlLayout& layout, double duration) {
  Pulse p;
  p.layout = layout;
  p.duration = duration;
  PiecewiseBasis pw;
  pw.values.assign(static_cast<std::size_t>(layout.channels()), {0.0});
  p.basis = pw;
  p.frames = FrameAngles::identity(layout.kind);
  return p;
}

double chebyshev_eval(const std::vector<double>& coeffs, double t,
                      double duration) {
  if (!(duration > 0.0)) throw DomainError("chebyshev_eval: duration must be positive");
  if (!(t >= 0.0 && t <= duration)) {
    throw DomainError("chebyshev_eval: t outside [0, duration]");
  }
  const double x = 2.0 * t / duration - 1.0;
  double b1 = 0.0;
  double b2 = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 1;) {
    const double b0 = coeffs[k] + 2.0 * x * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  const double c0 = coeffs.empty() ? 0.0 : coeffs[0];
  return c0 + x * b1 - b2;
}

Eigen::VectorXd chebyshev_values(int order, double x) {
  Eigen::VectorXd tn(order + 1);
  tn(0) = 1.0;
  if (order >= 1) tn(1) = x;
  for (int n = 2; n <= order; ++n) tn(n) = 2.0 * x * tn(n - 1) - tn(n - 2);
  return tn;
}

Eigen::VectorXd chebyshev_derivative_values(int order, double x) {
  Eigen::VectorXd d = Eigen::VectorXd::Zero(order + 1);
  double u_prev = 0.0, u = 1.0;  // U_{n-2}, U_{n-1}
  for (int n = 1; n <= order; ++n) {
    d(n) = n * u;
    const double next = 2.0 * x * u - u_prev;
    u_prev = u;
    u = next;
  }
  return d;
}

Eigen::MatrixXd control_samples(const Pulse& p, Eigen::Index sampling_steps) {
  p.validate();
  const int nch = p.layout.channels();
  if (const auto* pw = std::get_if<PiecewiseBasis>(&p.basis)) {
    Eigen::MatrixXd out(nch, pw->steps());
    for (int c = 0; c < nch; ++c) {
      for (Eigen::Index i = 0; i < pw->steps(); ++i) {
        out(c, i) = pw->values[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)];
      }
    }
    return out;
  }
  if (sampling_steps < 1) throw DomainError("sampling_steps must be >= 1");
  const auto& cb = std::get<ChebyshevBasis>(p.basis);
  Eigen::MatrixXd out(nch, sampling_steps);
  const double dt = p.duration / static_cast<double>(sampling_steps);
  for (Eigen::Index i = 0; i < sampling_steps; ++i) {
    const double t = (static_cast<double>(i) + 0.5) * dt;
    for (int c = 0; c < nch; ++c) {
      out(c, i) = chebyshev_eval(cb.coeffs[static_cast<std::size_t>(c)], t, p.duration);
    }
  }
  return out;
}

Eigen::MatrixXd gauss_node_samples(const Pulse& p, Eigen::Index sampling_steps) {
  p.validate();
  const auto* cb = std::get_if<ChebyshevBasis>(&p.basis);
  if (cb == nullptr) throw DomainError("gauss_node_samples: Chebyshev pulse required");
  if (sampling_steps < 1) throw DomainError("sampling_steps must be >= 1");
  const int nch = p.layout.channels();
  Eigen::MatrixXd out(nch, 2 * sampling_steps);
  const double dt = p.duration / static_cast<double>(sampling_steps);
  for (Eigen::Index i = 0; i < sampling_steps; ++i) {
    for (int k = 0; k < 2; ++k) {
      const double t = (static_cast<double>(i) + kMagnusNodes[k]) * dt;
      for (int c = 0; c < nch; ++c) {
        out(c, 2 * i + k) = chebyshev_eval(cb->coeffs[static_cast<std::size_t>(c)], t, p.duration);
      }
    }
  }
  return out;
}

Pulse sample_to_piecewise(const Pulse& p, Eigen::Index steps) {
  p.validate();
  if (steps < 1) throw DomainError("sample_to_piecewise: steps must be >= 1");
  Pulse out = p;
  PiecewiseBasis pw;
  pw.values.assign(static_cast<std::size_t>(p.layout.channels()),
                   std::vector<double>(static_cast<std::size_t>(steps)));
  if (const auto* src = std::get_if<PiecewiseBasis>(&p.basis)) {
    if (src->steps() == steps) return p;
    const double dt = p.duration / static_cast<double>(steps);
    const double src_dt = p.duration / static_cast<double>(src->steps());
    for (std::size_t c = 0; c < pw.values.size(); ++c) {
      for (Eigen::Index i = 0; i < steps; ++i) {
        const double t = (static_cast<double>(i) + 0.5) * dt;
        const auto j = std::min<Eigen::Index>(
            static_cast<Eigen::Index>(t / src_dt), src->steps() - 1);
        pw.values[c][static_cast<std::size_t>(i)] = src->values[c][static_cast<std::size_t>(j)];
      }
    }
  } else {
    const Eigen::MatrixXd s = control_samples(p, steps);
    for (std::size_t c = 0; c < pw.values.size(); ++c) {
      for (Eigen::Index i = 0; i < steps; ++i) {
        pw.values[c][static_cast<std::size_t>(i)] = s(static_cast<Eigen::Index>(c), i);
      }
    }
  }
  out.basis = pw;
  out.metadata.sampling_steps = steps;
  return out;
}

Pulse canonicalize_amplitudes(const Pulse& p) {
  p.validate();
  if (!p.is_piecewise()) {
    throw DomainError("canonicalize_amplitudes: sample the pulse to piecewise first");
  }
  Pulse out = p;
  auto& pw = std::get<PiecewiseBasis>(out.basis);
  for (std::size_t d = 0; d < static_cast<std::size_t>(p.layout.drives()); ++d) {
    auto& amp = pw.values[2 * d];
    auto& phase = pw.values[2 * d + 1];
    for (std::size_t i = 0; i < amp.size(); ++i) {
      if (amp[i] < 0.0) {
        amp[i] = -amp[i];
        phase[i] += M_PI;
      }
      phase[i] = std::remainder(phase[i], 2.0 * M_PI);
      if (phase[i] == -M_PI) phase[i] = M_PI;
    }
  }
  return out;
}

double max_amplitude(const Pulse& p, Eigen::Index sampling_steps) {
  const Eigen::MatrixXd s = control_samples(p, sampling_steps);
  double m = 0.0;
  for (int d = 0; d < p.layout.drives(); ++d) {
    m = std::max(m, s.row(2 * d).cwiseAbs().maxCoeff());
  }
  return m;
}

void write_waveform_csv(const Pulse& p, std::ostream& out,
                        Eigen::Index sampling_steps) {
  const Eigen::MatrixXd s = control_samples(p, sampling_steps);
  const bool local = p.layout.kind == LayoutKind::FullLocal;
  const bool detuned = p.layout.kind == LayoutKind::GlobalPlusDetuning;
  out << "t,omega1,phi1";
  if (local) out << ",omega2,phi2";
  if (detuned) out << ",delta";
  out << '\n';
  const auto old_precision = out.precision(17);
  const double dt = p.duration / static_cast<double>(s.cols());
  for (Eigen::Index i = 0; i < s.cols(); ++i) {
    out << (static_cast<double>(i) + 0.5) * dt;
    for (Eigen::Index c = 0; c < s.rows(); ++c) out << ',' << s(c, i);
    if (detuned) out << ',' << p.layout.delta;
    out << '\n';
  }
  out.precision(old_precision);
}

}  // namespace robust_iswap
