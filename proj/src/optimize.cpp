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

#include "robust_iswap/optimize.hpp"

#include <cmath>
#include <string>
#include <thread>
#include <variant>

#include "robust_iswap/bfgs.hpp"

namespace robust_iswap {

namespace {

struct RestartOutcome {
  Eigen::VectorXd x;
  CostBreakdown best;
  std::vector<CostBreakdown> trace;
  int iterations = 0;
  bool converged = false;
  bool valid = false;
  std::uint64_t seed = 0;
};

// With `coarse`, each restart first minimizes on the coarse grid and then
// polishes on the problem grid from that point.
RestartOutcome run_restart(const ControlProblem& problem, const ControlProblem* coarse,
                           const OptimizationConfig& cfg, int index) {
  BfgsOptions opt;
  opt.max_iterations = cfg.max_iterations;
  opt.gradient_tolerance = cfg.gradient_tolerance;
  opt.cost_tolerance = cfg.cost_tolerance;

  RestartOutcome out;
  // A non-finite start draws a fresh seed, a bounded number of times.
  for (int attempt = 0; attempt < 8 && !out.valid; ++attempt) {
    const std::uint64_t seed =
        cfg.seed + static_cast<std::uint64_t>(index) +
        static_cast<std::uint64_t>(attempt) * 1000003ULL;
    Eigen::VectorXd x0 = (index == 0 && attempt == 0 && cfg.warm_start)
                             ? problem.from_pulse(*cfg.warm_start)
                             : problem.random_parameters(seed, cfg.amplitude_scale,
                                                         cfg.angle_scale);
    CostBreakdown last;
    std::vector<CostBreakdown> trace;
    int coarse_iterations = 0;
    if (coarse != nullptr) {
      auto fg_coarse = [&](const Eigen::VectorXd& x, Eigen::VectorXd& g) {
        return coarse->evaluate(x, &g, &last);
      };
      auto on_accept = [&](const Eigen::VectorXd&, double) { trace.push_back(last); };
      BfgsResult rc = bfgs_minimize(fg_coarse, x0, opt, on_accept);
      if (rc.non_finite && rc.iterations == 0) continue;
      x0 = rc.x;
      coarse_iterations = rc.iterations;
    }
    auto fg = [&](const Eigen::VectorXd& x, Eigen::VectorXd& g) {
      return problem.evaluate(x, &g, &last);
    };
    auto on_accept = [&](const Eigen::VectorXd&, double) { trace.push_back(last); };
    BfgsResult r = bfgs_minimize(fg, x0, opt, on_accept);
    if (r.non_finite && r.iterations == 0) continue;
    r.iterations += coarse_iterations;
    out.valid = true;
    out.seed = seed;
    out.x = r.x;
    problem.evaluate(out.x, nullptr, &out.best);
    out.trace = std::move(trace);
    out.iterations = r.iterations;
    out.converged = out.best.cost <= cfg.cost_tolerance;
  }
  return out;
}

}  // namespace

void OptimizationConfig::validate() const {
  if (!(cost_tolerance > 0.0) || !(gradient_tolerance > 0.0)) {
    throw DomainError("optimization tolerances must be positive");
  }
  if (restarts < 1) throw DomainError("restarts must be >= 1");
  if (max_iterations < 0) throw DomainError("max_iterations must be >= 0");
  if (!(omega_max > 0.0)) throw DomainError("omega_max must be positive");
  if (threads < 1) throw DomainError("threads must be >= 1");
}

static OptimizationResult optimize_impl(const ControlProblem& problem, const ControlProblem* coarse,
                                 const OptimizationConfig& cfg) {
  cfg.validate();
  std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(cfg.restarts));
  int done = 0;
  bool any_converged = false;
  while (done < cfg.restarts && !(any_converged && cfg.stop_at_first_converged)) {
    const int batch = std::min(cfg.threads, cfg.restarts - done);
    if (batch == 1) {
      outcomes[static_cast<std::size_t>(done)] = run_restart(problem, coarse, cfg, done);
    } else {
      std::vector<std::thread> workers;
      for (int b = 0; b < batch; ++b) {
        workers.emplace_back([&, b] {
          outcomes[static_cast<std::size_t>(done + b)] = run_restart(problem, coarse, cfg, done + b);
        });
      }
      for (auto& w : workers) w.join();
    }
    for (int b = 0; b < batch; ++b) {
      any_converged = any_converged || outcomes[static_cast<std::size_t>(done + b)].converged;
    }
    done += batch;
  }

  // Lowest-index converged restart, else the lowest cost (ties by index).
  int pick = -1;
  for (int i = 0; i < done; ++i) {
    const auto& o = outcomes[static_cast<std::size_t>(i)];
    if (!o.valid) continue;
    if (o.converged) {
      pick = i;
      break;
    }
    if (pick < 0 || o.best.cost < outcomes[static_cast<std::size_t>(pick)].best.cost) pick = i;
  }
  OptimizationResult res;
  res.restarts_run = done;
  if (pick < 0) {
    // Every restart failed to produce a finite start.
    res.pulse = problem.to_pulse(Eigen::VectorXd::Zero(problem.num_parameters()));
    problem.evaluate(Eigen::VectorXd::Zero(problem.num_parameters()), nullptr, &res.best);
    res.pulse.metadata.converged = false;
    res.pulse.metadata.cost = res.best;
    return res;
  }
  const auto& o = outcomes[static_cast<std::size_t>(pick)];
  res.pulse = problem.to_pulse(o.x);
  res.cost_trace = o.trace;
  res.converged = o.converged;
  res.iterations = o.iterations;
  res.best = o.best;
  res.seed = o.seed;
  auto& meta = res.pulse.metadata;
  meta.cost = o.best;
  meta.seed = o.seed;
  meta.iterations = o.iterations;
  meta.converged = o.converged;
  meta.notes["objective"] =
      problem.spec().mode == CostMode::Gate ? "gate" : "state";
  meta.notes["restarts_run"] = std::to_string(done);
  return res;
}

OptimizationResult optimize_problem(const ControlProblem& problem,
                                    const OptimizationConfig& cfg) {
  return optimize_impl(problem, nullptr, cfg);
}

OptimizationResult grape_optimize(const GateProblem& problem, const OptimizationConfig& cfg) {
  ProblemSpec spec;
  spec.layout = problem.layout;
  spec.layout.omega_max = cfg.omega_max;
  spec.duration = problem.duration;
  spec.steps = problem.steps;
  spec.basis = ParameterBasis::Piecewise;
  spec.target = problem.target;
  return optimize_problem(ControlProblem(spec), cfg);
}

OptimizationResult chebyshev_optimize(const ChebyshevProblem& problem,
                                      const OptimizationConfig& cfg) {
  ProblemSpec spec;
  spec.layout = problem.layout;
  spec.layout.omega_max = cfg.omega_max;
  spec.duration = problem.duration;
  spec.steps = problem.sampling_steps;
  spec.basis = ParameterBasis::Chebyshev;
  spec.order = problem.order;
  spec.target = problem.target;
  spec.amplitude_rate_max = problem.amplitude_rate_max;
  spec.phase_rate_max = problem.phase_rate_max;
  const ControlProblem fine(spec);
  if (problem.coarse_steps <= 0 || problem.coarse_steps >= problem.sampling_steps) {
    return optimize_impl(fine, nullptr, cfg);
  }
  spec.steps = problem.coarse_steps;
  const ControlProblem coarse(spec);
  return optimize_impl(fine, &coarse, cfg);
}

OptimizationResult chebyshev_continuation(const ChebyshevProblem& problem,
                                          double start_duration, double step,
                                          const OptimizationConfig& cfg) {
  if (!(step > 0.0) || !(start_duration >= problem.duration)) {
    throw DomainError("continuation needs step > 0 and start_duration >= duration");
  }
  ChebyshevProblem stage = problem;
  stage.duration = start_duration;
  OptimizationResult res = chebyshev_optimize(stage, cfg);
  OptimizationConfig next = cfg;
  next.restarts = 1;
  while (res.converged && stage.duration > problem.duration + 1e-12) {
    const double t = std::max(problem.duration, stage.duration - step);
    Pulse warm = res.pulse;
    auto& coeffs = std::get<ChebyshevBasis>(warm.basis).coeffs;
    for (std::size_t ch = 0; ch < coeffs.size(); ch += 2) {
      for (double& v : coeffs[ch]) v *= stage.duration / t;
    }
    warm.duration = t;
    stage.duration = t;
    next.warm_start = std::move(warm);
    next.seed = res.seed;
    res = chebyshev_optimize(stage, next);
  }
  res.pulse.metadata.notes["continuation_start"] = std::to_string(start_duration);
  return res;
}

OptimizationResult bell_state_optimize(double duration, const OptimizationConfig& cfg,
                                       Eigen::Index steps) {
  ProblemSpec spec;
  spec.layout.kind = LayoutKind::Global;
  spec.layout.omega_max = cfg.omega_max;
  spec.duration = duration;
  spec.steps = steps;
  spec.mode = CostMode::State;
  spec.initial = Vector4cd::Constant(Complex(0.5, 0.0));
  spec.target = iswap_matrix();
  return optimize_problem(ControlProblem(spec), cfg);
}

Eigen::VectorXd gradient(const ControlProblem& problem, const Eigen::VectorXd& params) {
  Eigen::VectorXd g;
  problem.evaluate(params, &g);
  return g;
}

ScanResult critical_time_scan(const ControlLayout& layout, const std::vector<double>& t_grid,
                              const OptimizationConfig& cfg, Eigen::Index steps) {
  if (t_grid.empty()) throw DomainError("critical_time_scan: empty grid");
  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > t_grid[i - 1])) throw DomainError("critical_time_scan: grid must ascend");
  }
  ScanResult out;
  for (double t : t_grid) {
    const OptimizationResult r = grape_optimize({layout, iswap_matrix(), t, steps}, cfg);
    out.points.push_back({t, r.best, r.converged});
    if (r.converged && !out.critical_time) out.critical_time = t;
  }
  return out;
}

}  // namespace robust_iswap
