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

// robust-iswap command-line driver.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "robust_iswap/errors.hpp"
#include "robust_iswap/hamiltonians.hpp"
#include "robust_iswap/motion.hpp"
#include "robust_iswap/noise_analysis.hpp"
#include "robust_iswap/objectives.hpp"
#include "robust_iswap/optimize.hpp"
#include "robust_iswap/propagation.hpp"
#include "robust_iswap/pulses.hpp"

namespace ri = robust_iswap;
using nlohmann::json;

namespace {

enum Exit : int { kOk = 0, kNotConverged = 2, kUsage = 64, kSchema = 65, kIo = 66 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Global {
  std::uint64_t seed = 1;
  int threads = 0;
  std::string out;
  std::string format = "csv";
  bool quiet = false;
};

// All data output goes through one sink: --out if given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw ri::IoError("cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

void note(const Global& g, const std::string& msg) {
  if (!g.quiet) std::cerr << msg << '\n';
}

int resolve_threads(const Global& g) {
  if (g.threads > 0) return g.threads;
  if (const char* env = std::getenv("ROBUST_ISWAP_THREADS")) {
    try {
      const int t = std::stoi(env);
      if (t >= 1) return t;
    } catch (const std::exception&) {
    }
    throw UsageError("ROBUST_ISWAP_THREADS must be a positive integer");
  }
  return 1;
}

ri::ControlLayout make_layout(const std::string& name, std::optional<double> delta,
                              double omega_max) {
  ri::ControlLayout l;
  try {
    l.kind = ri::parse_layout(name);
  } catch (const ri::Error& e) {
    throw UsageError(e.what());
  }
  if (delta && l.kind != ri::LayoutKind::GlobalPlusDetuning) {
    throw UsageError("--delta applies to the detuned layout only");
  }
  l.delta = l.kind == ri::LayoutKind::GlobalPlusDetuning ? delta.value_or(2.0) : 0.0;
  l.omega_max = omega_max;
  return l;
}

std::vector<double> uniform_grid(double lo, double hi, double step) {
  if (!(step > 0.0)) throw UsageError("grid step must be positive");
  if (!(lo <= hi)) throw UsageError("grid minimum exceeds maximum");
  std::vector<double> g;
  const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
  for (long k = 0; k <= n; ++k) g.push_back(lo + static_cast<double>(k) * step);
  return g;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("not a number list: " + s);
    }
  }
  if (out.empty()) throw UsageError("empty number list");
  return out;
}

json breakdown_json(const ri::CostBreakdown& c) {
  return {{"fidelity", c.fidelity}, {"robustness", c.robustness}, {"cost", c.cost}};
}

void report_result(const Global& g, const ri::OptimizationResult& r, const std::string& path) {
  if (g.quiet) return;
  if (g.format == "json") {
    json j = {{"converged", r.converged}, {"iterations", r.iterations},
              {"restarts_run", r.restarts_run}, {"seed", r.seed},
              {"pulse", path}};
    j.update(breakdown_json(r.best));
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "converged,cost,fidelity,robustness,iterations,restarts_run,seed,pulse\n"
              << (r.converged ? 1 : 0) << ',' << r.best.cost << ',' << r.best.fidelity << ','
              << r.best.robustness << ',' << r.iterations << ',' << r.restarts_run << ','
              << r.seed << ',' << path << '\n';
  }
}

struct OptFlags {
  int restarts = 10;
  int max_iterations = 20000;
  double omega_max = 50.0;
  double cost_tolerance = 1e-10;
};

void add_opt_flags(CLI::App* cmd, OptFlags& f) {
  cmd->add_option("--restarts", f.restarts, "random restarts")->check(CLI::PositiveNumber);
  cmd->add_option("--max-iterations", f.max_iterations, "BFGS iterations per restart")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--omega-max", f.omega_max, "amplitude bound")->check(CLI::PositiveNumber);
  cmd->add_option("--cost-tolerance", f.cost_tolerance, "convergence threshold on C")
      ->check(CLI::PositiveNumber);
}

ri::OptimizationConfig make_config(const Global& g, const OptFlags& f) {
  ri::OptimizationConfig cfg;
  cfg.seed = g.seed;
  cfg.threads = resolve_threads(g);
  cfg.restarts = f.restarts;
  cfg.max_iterations = f.max_iterations;
  cfg.omega_max = f.omega_max;
  cfg.cost_tolerance = f.cost_tolerance;
  return cfg;
}

// optimize-gate --------------------------------------------------------------

struct GateFlags {
  std::string layout;
  double duration = 0.0;
  std::optional<double> delta;
  std::string basis = "piecewise";
  std::optional<long> steps;
  std::optional<int> order;
  std::optional<long> sampling_steps;
  std::string warm_start;
  std::optional<double> rate_max;
  std::optional<double> continue_from;
  double continue_step = 0.25;
  OptFlags opt;
};

int run_optimize_gate(const Global& g, const GateFlags& f) {
  const ri::ControlLayout layout = make_layout(f.layout, f.delta, f.opt.omega_max);
  if (!(f.duration > 0.0)) throw UsageError("--duration must be positive");
  const bool cheb = f.basis == "chebyshev";
  if (cheb && f.steps) throw UsageError("--steps applies to the piecewise basis only");
  if (!cheb && (f.order || f.sampling_steps || f.rate_max || f.continue_from)) {
    throw UsageError(
        "--order, --sampling-steps, --rate-max and --continue-from apply to the chebyshev basis "
        "only");
  }
  if (f.continue_from && (*f.continue_from < f.duration || !(f.continue_step > 0.0))) {
    throw UsageError("--continue-from must be >= --duration with a positive --continue-step");
  }
  ri::OptimizationConfig cfg = make_config(g, f.opt);
  if (!f.warm_start.empty()) cfg.warm_start = ri::read_pulse(f.warm_start);
  const std::string path = g.out.empty() ? "pulse.json" : g.out;

  ri::OptimizationResult r;
  if (cheb) {
    ri::ChebyshevProblem p{layout, ri::iswap_matrix(), f.duration, f.order.value_or(20)};
    if (f.sampling_steps) p.sampling_steps = *f.sampling_steps;
    if (f.rate_max) p.amplitude_rate_max = p.phase_rate_max = *f.rate_max;
    r = f.continue_from ? ri::chebyshev_continuation(p, *f.continue_from, f.continue_step, cfg)
                        : ri::chebyshev_optimize(p, cfg);
  } else {
    r = ri::grape_optimize({layout, ri::iswap_matrix(), f.duration, f.steps.value_or(90)}, cfg);
  }
  r.pulse.metadata.notes["command"] = "optimize-gate";
  ri::write_pulse(r.pulse, path);
  report_result(g, r, path);
  note(g, r.converged ? "converged" : "not converged");
  return r.converged ? kOk : kNotConverged;
}

// scan-critical-time ---------------------------------------------------------

struct ScanFlags {
  std::string layout;
  std::optional<double> delta;
  double t_min = 0.0, t_max = 0.0, t_step = 0.1;
  long steps = 90;
  OptFlags opt;
};

int run_scan(const Global& g, const ScanFlags& f) {
  const ri::ControlLayout layout = make_layout(f.layout, f.delta, f.opt.omega_max);
  if (!(f.t_min > 0.0)) throw UsageError("--t-min must be positive");
  const std::vector<double> grid = uniform_grid(f.t_min, f.t_max, f.t_step);
  const ri::ScanResult s = ri::critical_time_scan(layout, grid, make_config(g, f.opt), f.steps);
  Sink sink(g.out);
  auto& os = sink.stream();
  os.precision(17);
  if (g.format == "json") {
    json pts = json::array();
    for (const auto& p : s.points) {
      pts.push_back({{"duration", p.duration}, {"best_cost", p.best.cost}, {"converged", p.converged}});
    }
    json doc = {{"points", pts}};
    doc["critical_time"] = s.critical_time ? json(*s.critical_time) : json(nullptr);
    os << doc.dump(2) << '\n';
  } else {
    os << "duration,best_cost,converged\n";
    for (const auto& p : s.points) {
      os << p.duration << ',' << p.best.cost << ',' << (p.converged ? 1 : 0) << '\n';
    }
  }
  note(g, s.critical_time ? "critical time: " + std::to_string(*s.critical_time)
                          : "critical time: none in range");
  return kOk;
}

// sweep ----------------------------------------------------------------------

struct SweepFlags {
  std::string pulse;
  bool native = false;
  std::string mode = "gate";
  double dj_min = -0.2, dj_max = 0.2, dj_step = 0.005;
};

int run_sweep(const Global& g, const SweepFlags& f) {
  if (f.native == !f.pulse.empty()) throw UsageError("give exactly one of --pulse and --native");
  const std::vector<double> grid = uniform_grid(f.dj_min, f.dj_max, f.dj_step);
  ri::SweepSpec spec;
  spec.dj_values = grid;
  const bool state = f.mode == "bell-state";
  if (f.native) {
    spec.pulse = ri::native_pulse({ri::LayoutKind::Global, 0.0, 50.0}, state ? M_PI / 4 : M_PI / 2);
  } else {
    spec.pulse = ri::read_pulse(f.pulse);
  }
  std::vector<ri::SweepPoint> pts;
  if (state && f.native) {
    const double s = 1.0 / std::sqrt(2.0);
    ri::Ket target = ri::Ket::Zero(4);
    target(1) = s;
    target(2) = ri::Complex(0.0, -s);
    pts = ri::sweep_state_infidelity(spec, ri::basis_ket(4, 1), target);
  } else if (state) {
    const ri::Ket pp = ri::plus_plus_state();
    pts = ri::sweep_state_infidelity(spec, pp, ri::iswap_matrix() * pp);
  } else {
    pts = ri::sweep_infidelity(spec, ri::Operator(ri::iswap_matrix(), {2, 2}));
  }
  Sink sink(g.out);
  if (g.format == "json") {
    json arr = json::array();
    for (const auto& p : pts) arr.push_back({{"dj_over_j", p.dj}, {"infidelity", p.infidelity}});
    sink.stream() << arr.dump(2) << '\n';
  } else {
    ri::write_sweep_csv(pts, sink.stream());
  }
  return kOk;
}

// simulate-motion -------------------------------------------------------------

struct MotionFlags {
  std::string pulse;
  std::string omegas = "5,7,10,14";
  double length_ratio = 0.0421;
  double beta_ratio = 0.42;
  long n_max = 7;
  long sampling_steps = 1000;
  bool no_frames = false;
};

int run_motion(const Global& g, const MotionFlags& f) {
  const std::vector<double> omegas = parse_list(f.omegas);
  const ri::Pulse robust = ri::read_pulse(f.pulse);
  const ri::Operator target(ri::iswap_matrix(), {2, 2});
  std::vector<ri::MotionRow> rows;
  for (double w : omegas) {
    ri::MotionalSimSpec spec;
    spec.model.omega_over_j = w;
    spec.model.length_ratio = f.length_ratio;
    spec.model.beta_ratio = f.beta_ratio;
    spec.model.n_max = f.n_max;
    spec.sampling_steps = f.sampling_steps;
    spec.apply_frames = !f.no_frames;
    spec.model.validate();
    spec.pulse = ri::native_pulse({ri::LayoutKind::Global, 0.0, 50.0}, M_PI / 2);
    const double native = ri::simulate_with_motion(spec, target);
    spec.pulse = robust;
    rows.push_back({w, native, ri::simulate_with_motion(spec, target)});
    note(g, "omega/J = " + std::to_string(w) + " done");
  }
  Sink sink(g.out);
  if (g.format == "json") {
    json arr = json::array();
    for (const auto& r : rows) {
      arr.push_back({{"omega_over_j", r.omega_over_j},
                     {"infidelity_native", r.infidelity_native},
                     {"infidelity_robust", r.infidelity_robust}});
    }
    sink.stream() << arr.dump(2) << '\n';
  } else {
    ri::write_motion_csv(rows, sink.stream());
  }
  return kOk;
}

// ramsey ----------------------------------------------------------------------

struct RamseyFlags {
  double j = 1.0;
  double sigma = 0.05;
  std::uint64_t samples = 100000;
  double t_max = 60.0;
  double t_step = 0.1;
};

int run_ramsey(const Global& g, const RamseyFlags& f) {
  if (!(f.sigma >= 0.0)) throw UsageError("--sigma must be >= 0");
  if (f.samples < 1) throw UsageError("--samples must be >= 1");
  const std::vector<double> ts = uniform_grid(0.0, f.t_max, f.t_step);
  const auto pts = ri::ramsey_monte_carlo(f.j, f.sigma, ts, f.samples, g.seed, resolve_threads(g));
  // The fit needs decay within the grid; report NaN when it has none.
  double t2 = std::nan("");
  if (f.sigma > 0.0) {
    try {
      t2 = ri::fit_dephasing_time(pts, f.j);
    } catch (const ri::DomainError&) {
    }
  }
  Sink sink(g.out);
  if (g.format == "json") {
    json arr = json::array();
    for (const auto& p : pts) {
      arr.push_back({{"t", p.t}, {"p11_mc", p.p11_mc}, {"p11_analytic", p.p11_analytic}});
    }
    sink.stream() << json({{"points", arr}, {"t2_fit", std::isfinite(t2) ? json(t2) : json(nullptr)}})
                         .dump(2)
                  << '\n';
  } else {
    ri::write_ramsey_csv(pts, sink.stream());
  }
  std::ostringstream msg;
  msg << "fitted T2 = " << t2 << " (sqrt(2)/sigma = " << std::sqrt(2.0) / f.sigma << ")";
  note(g, msg.str());
  return kOk;
}

// check-criteria ----------------------------------------------------------------

struct CriteriaFlags {
  std::string layout;
  std::optional<double> delta;
  int samples = 100;
  double amplitude = 10.0;
};

int run_criteria(const Global& g, const CriteriaFlags& f) {
  const ri::ControlLayout layout = make_layout(f.layout, f.delta, 50.0);
  if (f.samples < 1) throw UsageError("--samples must be >= 1");
  std::mt19937_64 rng(g.seed);
  std::uniform_real_distribution<double> amp(-f.amplitude, f.amplitude);
  std::uniform_real_distribution<double> phase(-M_PI, M_PI);
  const ri::Matrix4cd hex = ri::first_order_hamiltonian().matrix();
  std::vector<ri::Operator> h0;
  for (int s = 0; s < f.samples; ++s) {
    std::vector<double> u(static_cast<std::size_t>(layout.channels()));
    for (std::size_t c = 0; c < u.size(); ++c) u[c] = c % 2 == 0 ? amp(rng) : phase(rng);
    h0.emplace_back(Eigen::MatrixXcd(hex + ri::control_matrix(layout, u.data())),
                    std::vector<Eigen::Index>{2, 2});
  }
  const std::pair<ri::Operator, ri::Operator> candidate{ri::single_excitation_projector(),
                                                        ri::swap_operator()};
  const ri::CriteriaReport r = ri::check_criteria(h0, ri::first_order_hamiltonian(), candidate);
  Sink sink(g.out);
  sink.stream() << r.to_json() << '\n';
  note(g, r.any_fires() ? "a robustness obstruction fires" : "no criterion fires");
  return kOk;
}

// prepare-bell ------------------------------------------------------------------

struct BellFlags {
  double duration = 4.47;
  long steps = 90;
  OptFlags opt;
};

int run_bell(const Global& g, const BellFlags& f) {
  if (!(f.duration > 0.0)) throw UsageError("--duration must be positive");
  ri::OptimizationResult r = ri::bell_state_optimize(f.duration, make_config(g, f.opt), f.steps);
  r.pulse.metadata.notes["command"] = "prepare-bell";
  const std::string path = g.out.empty() ? "bell_pulse.json" : g.out;
  ri::write_pulse(r.pulse, path);
  report_result(g, r, path);
  return r.converged ? kOk : kNotConverged;
}

// estimate-noise ----------------------------------------------------------------

struct EstimateFlags {
  std::optional<double> length_nm;
  std::optional<double> separation_um;
  std::optional<double> length_ratio;
  double omega_over_kt = 0.42;
  double zeta = 0.062;
};

int run_estimate(const Global& g, const EstimateFlags& f) {
  ri::MotionalModel m;
  if (f.length_ratio) {
    if (f.length_nm || f.separation_um) {
      throw UsageError("--length-ratio excludes --harmonic-length-nm/--separation-um");
    }
    m.length_ratio = *f.length_ratio;
  } else {
    if (!f.length_nm || !f.separation_um) {
      throw UsageError("--harmonic-length-nm and --separation-um are required together");
    }
    m.length_ratio = (*f.length_nm * 1e-9) / (*f.separation_um * 1e-6);
  }
  m.beta_ratio = f.omega_over_kt;
  m.zeta = f.zeta;
  if (!(m.length_ratio > 0.0) || !(m.beta_ratio > 0.0)) {
    throw UsageError("length ratio and omega/kT must be positive");
  }
  const double mot = ri::delta_j_motion_estimate(m);
  const double motrot = ri::delta_j_motrot_estimate(m);
  const double c = ri::coth(m.beta_ratio / 2.0);
  Sink sink(g.out);
  auto& os = sink.stream();
  if (g.format == "json") {
    os << json({{"length_ratio", m.length_ratio}, {"omega_over_kt", m.beta_ratio},
                {"zeta", m.zeta}, {"coth_half_beta", c},
                {"delta_j_mot_over_j", mot}, {"delta_j_motrot_over_j", motrot}})
              .dump(2)
       << '\n';
  } else {
    os.precision(6);
    os << "length_ratio,omega_over_kt,zeta,coth_half_beta,delta_j_mot_over_j,delta_j_motrot_over_j\n"
       << m.length_ratio << ',' << m.beta_ratio << ',' << m.zeta << ',' << c << ',' << mot << ','
       << motrot << '\n';
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Robust iSWAP pulse synthesis and analysis"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_option("--seed", g.seed, "random seed");
  app.add_option("--threads", g.threads, "worker threads (default: $ROBUST_ISWAP_THREADS or 1)")
      ->check(CLI::PositiveNumber);
  app.add_option("--out", g.out, "output path (default: stdout, or a pulse file name)");
  app.add_option("--format", g.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_flag("--quiet", g.quiet, "suppress progress and summaries");

  GateFlags gate;
  auto* og = app.add_subcommand("optimize-gate", "synthesize a robust iSWAP pulse");
  og->add_option("--layout", gate.layout, "global | full-local | detuned")->required();
  og->add_option("--duration", gate.duration, "J T")->required();
  og->add_option("--delta", gate.delta, "detuning / J (detuned layout)");
  og->add_option("--basis", gate.basis, "piecewise | chebyshev")
      ->check(CLI::IsMember({"piecewise", "chebyshev"}));
  og->add_option("--steps", gate.steps, "piecewise steps")->check(CLI::PositiveNumber);
  og->add_option("--order", gate.order, "Chebyshev order M")->check(CLI::NonNegativeNumber);
  og->add_option("--sampling-steps", gate.sampling_steps, "Chebyshev propagation steps")
      ->check(CLI::PositiveNumber);
  og->add_option("--warm-start", gate.warm_start, "initial pulse JSON");
  og->add_option("--rate-max", gate.rate_max, "bound on |dOmega/dt| and |dphi/dt| (chebyshev)")
      ->check(CLI::PositiveNumber);
  og->add_option("--continue-from", gate.continue_from,
                 "solve at this duration first, then shorten to --duration");
  og->add_option("--continue-step", gate.continue_step, "duration decrement for --continue-from");
  add_opt_flags(og, gate.opt);

  ScanFlags scan;
  auto* os = app.add_subcommand("scan-critical-time", "best cost against gate duration");
  os->add_option("--layout", scan.layout)->required();
  os->add_option("--delta", scan.delta);
  os->add_option("--t-min", scan.t_min)->required();
  os->add_option("--t-max", scan.t_max)->required();
  os->add_option("--t-step", scan.t_step);
  os->add_option("--steps", scan.steps)->check(CLI::PositiveNumber);
  add_opt_flags(os, scan.opt);

  SweepFlags sweep;
  auto* sw = app.add_subcommand("sweep", "infidelity against Delta J / J");
  sw->add_option("--pulse", sweep.pulse, "pulse JSON");
  sw->add_flag("--native", sweep.native, "use the uncontrolled exchange pulse");
  sw->add_option("--mode", sweep.mode, "gate | bell-state")
      ->check(CLI::IsMember({"gate", "bell-state"}));
  sw->add_option("--dj-min", sweep.dj_min);
  sw->add_option("--dj-max", sweep.dj_max);
  sw->add_option("--dj-step", sweep.dj_step);

  MotionFlags motion;
  auto* sm = app.add_subcommand("simulate-motion", "gate infidelity with quantized motion");
  sm->add_option("--pulse", motion.pulse, "robust pulse JSON")->required();
  sm->add_option("--omega-over-j", motion.omegas, "comma-separated trap frequencies");
  sm->add_option("--length-ratio", motion.length_ratio);
  sm->add_option("--omega-over-kt", motion.beta_ratio);
  sm->add_option("--n-max", motion.n_max)->check(CLI::PositiveNumber);
  sm->add_option("--sampling-steps", motion.sampling_steps)->check(CLI::PositiveNumber);
  sm->add_flag("--no-frames", motion.no_frames, "ignore the pulse's frame angles");

  RamseyFlags ramsey;
  auto* rm = app.add_subcommand("ramsey", "Monte-Carlo Ramsey dephasing");
  rm->add_option("--j", ramsey.j);
  rm->add_option("--sigma", ramsey.sigma, "std of Delta J");
  rm->add_option("--samples", ramsey.samples);
  rm->add_option("--t-max", ramsey.t_max);
  rm->add_option("--t-step", ramsey.t_step);

  CriteriaFlags crit;
  auto* cc = app.add_subcommand("check-criteria", "robustness obstruction checks");
  cc->add_option("--layout", crit.layout)->required();
  cc->add_option("--delta", crit.delta);
  cc->add_option("--samples", crit.samples);
  cc->add_option("--amplitude", crit.amplitude, "control amplitude range");

  BellFlags bell;
  auto* pb = app.add_subcommand("prepare-bell", "robust Bell-state preparation, global drive");
  pb->add_option("--duration", bell.duration);
  pb->add_option("--steps", bell.steps)->check(CLI::PositiveNumber);
  add_opt_flags(pb, bell.opt);

  EstimateFlags est;
  auto* en = app.add_subcommand("estimate-noise", "Delta J estimates from trap parameters");
  en->add_option("--harmonic-length-nm", est.length_nm);
  en->add_option("--separation-um", est.separation_um);
  en->add_option("--length-ratio", est.length_ratio);
  en->add_option("--omega-over-kt", est.omega_over_kt);
  en->add_option("--zeta", est.zeta);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*og) return run_optimize_gate(g, gate);
    if (*os) return run_scan(g, scan);
    if (*sw) return run_sweep(g, sweep);
    if (*sm) return run_motion(g, motion);
    if (*rm) return run_ramsey(g, ramsey);
    if (*cc) return run_criteria(g, crit);
    if (*pb) return run_bell(g, bell);
    if (*en) return run_estimate(g, est);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n' << app.help();
    return kUsage;
  } catch (const ri::SchemaError& e) {
    std::cerr << "schema error: " << e.what() << '\n';
    return kSchema;
  } catch (const ri::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const ri::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ri::DimensionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
