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

// Dense BFGS quasi-Newton minimizer with a strong-Wolfe line search.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace robust_iswap {

struct BfgsOptions {
  int max_iterations = 1000;
  double gradient_tolerance = 1e-10;  // on the max-norm of the gradient
  /// Stop as soon as f <= cost_tolerance.
  double cost_tolerance = -std::numeric_limits<double>::infinity();
  double c1 = 1e-4;
  double c2 = 0.9;
  int max_line_search = 40;
};

struct BfgsResult {
  Eigen::VectorXd x;
  double f = std::numeric_limits<double>::infinity();
  int iterations = 0;
  int evaluations = 0;
  bool reached_cost = false;
  bool reached_gradient = false;
  bool non_finite = false;
  std::vector<double> trace;  // f after every accepted step
  std::string status;
};

namespace detail {

// Minimizer of the cubic through (a, fa, ga), (b, fb, gb); NaN if none.
inline double cubic_minimizer(double a, double fa, double ga, double b, double fb, double gb) {
  const double d1 = ga + gb - 3.0 * (fa - fb) / (a - b);
  const double disc = d1 * d1 - ga * gb;
  if (disc < 0.0) return std::numeric_limits<double>::quiet_NaN();
  const double d2 = std::copysign(std::sqrt(disc), b - a);
  return b - (b - a) * (gb + d2 - d1) / (gb - ga + 2.0 * d2);
}

}  // namespace detail

/// fg(x, grad) returns f(x) and writes its gradient. on_accept(x, f) runs
/// after every accepted step; the last fg call was at that x.
template <typename Objective, typename OnAccept>
BfgsResult bfgs_minimize(Objective&& fg, Eigen::VectorXd x0, const BfgsOptions& opt,
                         OnAccept&& on_accept) {
  using Eigen::VectorXd;
  const Eigen::Index n = x0.size();
  BfgsResult res;
  res.x = std::move(x0);
  VectorXd g(n);
  double f = fg(res.x, g);
  ++res.evaluations;
  if (!std::isfinite(f) || !g.allFinite()) {
    res.non_finite = true;
    res.status = "non-finite cost at the initial point";
    res.f = f;
    return res;
  }
  Eigen::MatrixXd hinv = Eigen::MatrixXd::Identity(n, n);
  bool fresh = true;
  VectorXd xn(n);
  VectorXd gn(n);

  auto eval = [&](double alpha, const VectorXd& dir, double& fa, double& da) {
    xn = res.x + alpha * dir;
    fa = fg(xn, gn);
    ++res.evaluations;
    if (!std::isfinite(fa) || !gn.allFinite()) {
      fa = std::numeric_limits<double>::infinity();
      da = std::numeric_limits<double>::quiet_NaN();
      return false;
    }
    da = gn.dot(dir);
    return true;
  };

  for (res.iterations = 0; res.iterations < opt.max_iterations;) {
    if (f <= opt.cost_tolerance) {
      res.reached_cost = true;
      res.status = "cost tolerance reached";
      break;
    }
    if (g.lpNorm<Eigen::Infinity>() <= opt.gradient_tolerance) {
      res.reached_gradient = true;
      res.status = "gradient tolerance reached";
      break;
    }
    VectorXd dir = -hinv * g;
    double d0 = g.dot(dir);
    if (!(d0 < 0.0)) {
      hinv.setIdentity();
      fresh = true;
      dir = -g;
      d0 = -g.squaredNorm();
    }
    double alpha = fresh ? std::min(1.0, 1.0 / g.lpNorm<Eigen::Infinity>()) : 1.0;

    // Strong-Wolfe bracketing and zoom.
    double a_prev = 0.0, f_prev = f, d_prev = d0;
    double a_lo = 0.0, f_lo = f, d_lo = d0, a_hi = 0.0, f_hi = f, d_hi = d0;
    bool bracketed = false;
    bool accepted = false;
    double fa = f, da = d0;
    // Armijo, or the approximate Wolfe test once f changes reach roundoff.
    auto decreased = [&](double a, double fv, double dv) {
      if (fv <= f + opt.c1 * a * d0) return true;
      return fv <= f + 1e-14 * std::abs(f) && dv <= (2.0 * opt.c1 - 1.0) * d0;
    };
    int tries = 0;
    for (; tries < opt.max_line_search; ++tries) {
      const bool finite = eval(alpha, dir, fa, da);
      if (!finite) {
        a_lo = a_prev, f_lo = f_prev, d_lo = d_prev;
        a_hi = alpha, f_hi = fa, d_hi = da;
        bracketed = true;
        break;
      }
      if (!decreased(alpha, fa, da) || (tries > 0 && fa > f_prev)) {
        a_lo = a_prev, f_lo = f_prev, d_lo = d_prev;
        a_hi = alpha, f_hi = fa, d_hi = da;
        bracketed = true;
        break;
      }
      if (std::abs(da) <= -opt.c2 * d0) {
        accepted = true;
        break;
      }
      if (da >= 0.0) {
        a_lo = alpha, f_lo = fa, d_lo = da;
        a_hi = a_prev, f_hi = f_prev, d_hi = d_prev;
        bracketed = true;
        break;
      }
      a_prev = alpha, f_prev = fa, d_prev = da;
      alpha *= 2.0;
    }
    if (bracketed && !accepted) {
      for (; tries < opt.max_line_search; ++tries) {
        const double lo = std::min(a_lo, a_hi);
        const double hi = std::max(a_lo, a_hi);
        double trial = std::isfinite(f_hi) && std::isfinite(d_hi)
                           ? detail::cubic_minimizer(a_lo, f_lo, d_lo, a_hi, f_hi, d_hi)
                           : std::numeric_limits<double>::quiet_NaN();
        const double margin = 0.1 * (hi - lo);
        if (!std::isfinite(trial) || trial < lo + margin || trial > hi - margin) {
          trial = 0.5 * (lo + hi);
        }
        alpha = trial;
        const bool finite = eval(alpha, dir, fa, da);
        if (!finite || !decreased(alpha, fa, da) || fa > f_lo) {
          a_hi = alpha, f_hi = fa, d_hi = da;
        } else {
          if (std::abs(da) <= -opt.c2 * d0) {
            accepted = true;
            break;
          }
          if (da * (a_hi - a_lo) >= 0.0) {
            a_hi = a_lo, f_hi = f_lo, d_hi = d_lo;
          }
          a_lo = alpha, f_lo = fa, d_lo = da;
        }
        if (hi - lo < 1e-16 * std::max(1.0, hi)) break;
      }
      // Accept a sufficient-decrease point even if curvature was not met.
      if (!accepted && a_lo > 0.0 && f_lo < f) {
        alpha = a_lo;
        accepted = eval(alpha, dir, fa, da);
      }
    }
    if (!accepted) {
      if (fresh) {
        res.status = "line search failed";
        break;
      }
      hinv.setIdentity();
      fresh = true;
      continue;
    }

    const VectorXd s = xn - res.x;
    const VectorXd y = gn - g;
    res.x = xn;
    f = fa;
    g = gn;
    ++res.iterations;
    res.trace.push_back(f);
    on_accept(res.x, f);
    const double sy = s.dot(y);
    if (sy > 1e-12 * s.norm() * y.norm() && sy > 0.0) {
      if (fresh) {
        hinv *= sy / y.squaredNorm();
        fresh = false;
      }
      const double rho = 1.0 / sy;
      const VectorXd hy = hinv * y;
      const double yhy = y.dot(hy);
      // H+ = (I - rho s y^T) H (I - rho y s^T) + rho s s^T
      hinv.noalias() += (rho * rho * yhy + rho) * (s * s.transpose()) -
                        rho * (hy * s.transpose() + s * hy.transpose());
    }
  }
  if (f <= opt.cost_tolerance) res.reached_cost = true;
  if (res.status.empty()) res.status = "iteration limit reached";
  res.f = f;
  return res;
}

template <typename Objective>
BfgsResult bfgs_minimize(Objective&& fg, Eigen::VectorXd x0, const BfgsOptions& opt) {
  return bfgs_minimize(std::forward<Objective>(fg), std::move(x0), opt,
                       [](const Eigen::VectorXd&, double) {});
}

}  // namespace robust_iswap
