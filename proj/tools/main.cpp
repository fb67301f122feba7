// Command-line front end: chain runs, dimension-sweep benchmarks, mode
// finding, the 1-D grid verification oracle, and schedule inspection.
// All outputs are UTF-8 CSV with header rows.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "thinmc/csv.hpp"
#include "thinmc/diagnostics.hpp"
#include "thinmc/feasible_start.hpp"
#include "thinmc/grid_oracle.hpp"
#include "thinmc/optimizer.hpp"
#include "thinmc/potentials.hpp"
#include "thinmc/rng.hpp"
#include "thinmc/samplers.hpp"
#include "thinmc/schedules.hpp"

namespace {

using namespace thinmc;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct TargetOpts {
  std::string name = "pi1";
  int dim = 2;
  double a = 1.0;      // pi1 curvature
  double alpha = 4.0;  // radial exponent
  double m = 1.0;      // gaussian curvature
};

struct StepOpts {
  std::string step = "auto";
  double eps = kNaN;
  double beta = kNaN;
  double c = 1.0;
  std::string schedule = "B";
};

Potential build_target(const TargetOpts& t, int dim) {
  double param = 0.0;
  if (t.name == "pi1") param = t.a;
  if (t.name == "radial") param = t.alpha;
  if (t.name == "gaussian") param = t.m;
  return make_target(t.name, dim, param);
}

StepRule parse_rule(const std::string& s) {
  if (s == "A") return StepRule::A;
  if (s == "B") return StepRule::B;
  throw std::invalid_argument("--schedule must be A or B");
}

KernelKind parse_algo(const std::string& s) {
  if (s == "rwm") return KernelKind::rwm;
  if (s == "mala") return KernelKind::mala;
  if (s == "mao") return KernelKind::mao;
  throw std::invalid_argument("--algo must be rwm, mala, or mao");
}

// Resolves --step: "auto" goes through the schedule for this target and
// dimension, anything else parses as an explicit step size.
double resolve_step(const StepOpts& s, const Potential& pot,
                    std::optional<Schedule>* schedule_out = nullptr) {
  if (s.step == "auto") {
    if (std::isnan(s.eps) || std::isnan(s.beta)) {
      throw std::invalid_argument("--step auto requires --eps and --beta");
    }
    Schedule sch = step_size(s.eps, s.beta, pot.dim, pot.alpha, pot.gamma, s.c,
                             parse_rule(s.schedule));
    if (schedule_out) *schedule_out = sch;
    return sch.h;
  }
  double h = parse_double(s.step);
  if (!(h > 0.0)) throw std::invalid_argument("--step must be positive");
  return h;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    out.push_back(std::stoi(tok));
  }
  if (out.empty()) throw std::invalid_argument("empty integer list");
  return out;
}

std::vector<std::string> parse_string_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(tok);
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

// ---------------------------------------------------------------- sample ---

struct SampleOpts {
  TargetOpts target;
  StepOpts step;
  std::string algo = "mala";
  long iters = 100000;
  long burnin = 10000;
  long stride = 1;
  double zeta = 0.0;
  std::uint64_t seed = 1;
  std::string mode_source = "exact";
  double delta = kNaN;
  std::string out_dir = ".";
};

int cmd_sample(const SampleOpts& o) {
  Potential pot = build_target(o.target, o.target.dim);
  std::optional<Schedule> sch;
  double h = resolve_step(o.step, pot, &sch);

  SamplerConfig cfg;
  cfg.kernel.kind = parse_algo(o.algo);
  cfg.kernel.h = h;
  cfg.zeta = o.zeta;
  cfg.n_iters = o.iters;
  cfg.burn_in = o.burnin;
  cfg.record_stride = o.stride;
  cfg.seed = o.seed;

  Eigen::VectorXd x_tilde = pot.mode;
  if (cfg.kernel.kind == KernelKind::mao && o.mode_source == "optimize") {
    OptimizerConfig oc;
    oc.l_rel = default_l_rel(pot);
    oc.alpha = pot.alpha;
    double delta = o.delta;
    if (std::isnan(delta)) {
      delta = std::isnan(o.step.eps) ? 1e-6 : delta_tolerance(h, o.step.eps, o.step.c);
    }
    oc.grad_tol = pot.m > 0.0 ? pot.m * delta : delta;
    Eigen::VectorXd x0 = Eigen::VectorXd::Constant(pot.dim, 2.0 / std::sqrt(pot.dim));
    ModeResult mode = find_mode(pot, x0, oc);
    x_tilde = mode.x_tilde;
    std::cout << "mode_norm=" << format_double(x_tilde.norm())
              << " optimizer_iters=" << mode.iters << "\n";
  } else if (o.mode_source != "exact" && o.mode_source != "optimize") {
    throw std::invalid_argument("--mode-source must be exact or optimize");
  }
  cfg.kernel.mode_estimate = x_tilde;

  Eigen::VectorXd x0 = cfg.kernel.kind == KernelKind::mao ? x_tilde : pot.mode;
  auto t0 = std::chrono::steady_clock::now();
  Trace trace = run_chain(cfg, pot, x0);
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  CsvWriter tf(o.out_dir + "/trace.csv");
  std::vector<std::string> head = {"iter"};
  for (int c = 0; c < pot.dim; ++c) head.push_back("x_" + std::to_string(c));
  head.push_back("accepted");
  head.push_back("log_pi");
  tf.row(head);
  for (long r = 0; r < trace.states.rows(); ++r) {
    std::vector<std::string> row;
    row.push_back(std::to_string(o.burnin + 1 + r * o.stride));
    for (int c = 0; c < pot.dim; ++c) row.push_back(format_double(trace.states(r, c)));
    row.push_back(trace.row_tags[static_cast<std::size_t>(r)] == StepTag::accepted ? "1" : "0");
    row.push_back(format_double(trace.log_densities[static_cast<std::size_t>(r)]));
    tf.row(row);
  }

  DiagnosticsReport rep = summarize(trace);
  CsvWriter rf(o.out_dir + "/report.csv");
  rf.row({"coord", "ess", "accept_rate", "runtime_seconds"});
  for (int c = 0; c < pot.dim; ++c) {
    rf.row({std::to_string(c), format_double(rep.ess[static_cast<std::size_t>(c)]),
            format_double(rep.accept_rate), format_double(seconds)});
  }

  std::cout << "accept_rate=" << format_double(rep.accept_rate)
            << " h=" << format_double(h)
            << " ess_x1=" << format_double(rep.ess[0])
            << " runtime_seconds=" << format_double(seconds) << "\n";
  return 0;
}

// ----------------------------------------------------------------- bench ---

struct BenchOpts {
  TargetOpts target;
  StepOpts step;
  std::string algos = "mala,mao";
  std::string dims = "2,8,64";
  long iters = 100000;
  long burnin = 10000;
  double zeta = 0.0;
  std::uint64_t seed = 1;
  int threads = 0;
  std::string out_dir = ".";
};

struct BenchCell {
  std::string algo;
  int algo_index = 0;
  int dim = 0;
};

struct BenchRow {
  double ess_x1 = kNaN, ess_x2 = kNaN, accept_rate = kNaN, h_used = kNaN;
  std::string status = "ok";
};

BenchRow run_bench_cell(const BenchOpts& o, const BenchCell& cell) {
  BenchRow row;
  Potential pot = build_target(o.target, cell.dim);
  double h = resolve_step(o.step, pot);
  row.h_used = h;

  SamplerConfig cfg;
  cfg.kernel.kind = parse_algo(cell.algo);
  cfg.kernel.h = h;
  cfg.kernel.mode_estimate = pot.mode;
  cfg.zeta = o.zeta;
  cfg.n_iters = o.iters;
  cfg.burn_in = o.burnin;
  cfg.seed = o.seed;
  cfg.stream = (static_cast<std::uint64_t>(cell.algo_index + 1) << 32) |
               static_cast<std::uint64_t>(cell.dim);

  Trace trace = run_chain(cfg, pot, pot.mode);
  row.accept_rate = trace.accept_rate();

  long n = trace.states.rows();
  std::vector<double> series(static_cast<std::size_t>(n));
  for (long t = 0; t < n; ++t) series[static_cast<std::size_t>(t)] = trace.states(t, 0);
  row.ess_x1 = effective_sample_size(series);
  if (cell.dim >= 2) {
    for (long t = 0; t < n; ++t) series[static_cast<std::size_t>(t)] = trace.states(t, 1);
    row.ess_x2 = effective_sample_size(series);
  }
  return row;
}

int cmd_bench(const BenchOpts& o) {
  std::vector<std::string> algos = parse_string_list(o.algos);
  std::vector<int> dims = parse_int_list(o.dims);

  std::vector<BenchCell> cells;
  for (std::size_t a = 0; a < algos.size(); ++a) {
    for (int d : dims) cells.push_back({algos[a], static_cast<int>(a), d});
  }
  for (const BenchCell& cell : cells) parse_algo(cell.algo);  // fail fast

  std::vector<BenchRow> rows(cells.size());
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  unsigned n_threads = o.threads > 0 ? static_cast<unsigned>(o.threads)
                                     : std::min<unsigned>(hw, 4);
  n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(cells.size()));

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      try {
        rows[i] = run_bench_cell(o, cells[i]);
      } catch (const std::exception& e) {
        rows[i].status = std::string("error: ") + e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  CsvWriter bf(o.out_dir + "/bench.csv");
  bf.row({"algo", "target", "dim", "ess_x1", "ess_x2", "accept_rate", "h_used",
          "seed", "status"});
  for (std::size_t i = 0; i < cells.size(); ++i) {
    bf.row({cells[i].algo, o.target.name, std::to_string(cells[i].dim),
            format_double(rows[i].ess_x1), format_double(rows[i].ess_x2),
            format_double(rows[i].accept_rate), format_double(rows[i].h_used),
            std::to_string(o.seed), rows[i].status});
  }
  std::cout << "wrote " << cells.size() << " rows to " << o.out_dir << "/bench.csv\n";
  return 0;
}

// -------------------------------------------------------------- optimize ---

struct OptimizeOpts {
  TargetOpts target;
  double l_rel = kNaN;
  double grad_tol = 1e-8;
  long max_iters = 10000;
  std::string x0;
};

int cmd_optimize(const OptimizeOpts& o) {
  Potential pot = build_target(o.target, o.target.dim);
  OptimizerConfig oc;
  oc.l_rel = std::isnan(o.l_rel) ? default_l_rel(pot) : o.l_rel;
  oc.grad_tol = o.grad_tol;
  oc.max_iters = o.max_iters;
  oc.alpha = pot.alpha;

  Eigen::VectorXd x0;
  if (o.x0.empty()) {
    x0 = Eigen::VectorXd::Constant(pot.dim, 2.0 / std::sqrt(pot.dim));
  } else {
    std::vector<std::string> parts = parse_string_list(o.x0);
    if (static_cast<int>(parts.size()) != pot.dim) {
      throw std::invalid_argument("--x0 needs exactly dim components");
    }
    x0.resize(pot.dim);
    for (int i = 0; i < pot.dim; ++i) x0[i] = parse_double(parts[static_cast<std::size_t>(i)]);
  }

  ModeResult res = find_mode(pot, x0, oc);
  std::cout << "iters=" << res.iters << " grad_norm=" << format_double(res.grad_norm)
            << " mode_norm=" << format_double(res.x_tilde.norm())
            << " f=" << format_double(eval_potential(pot, res.x_tilde)) << "\n";
  return 0;
}

// ---------------------------------------------------------------- oracle ---

struct OracleOpts {
  TargetOpts target;
  std::string algo = "mao";
  double h = 0.05;
  double zeta = 0.5;
  double lo = -4.0;
  double hi = 4.0;
  int cells = 512;
  double eps = 0.1;
  int p = 2;
  std::string out_dir = ".";
};

int cmd_oracle(const OracleOpts& o) {
  Potential pot = build_target(o.target, 1);  // grid verification is 1-D only

  ProposalKernel kernel;
  kernel.kind = parse_algo(o.algo);
  kernel.h = o.h;
  kernel.mode_estimate = pot.mode;

  GridKernel gk = discretize(kernel, pot, o.zeta, {o.lo, o.hi, o.cells});
  Eigen::VectorXd pi_hat = stationary(gk);
  double tv = total_variation(pi_hat, gk.pi_disc);
  double rev = reversibility_residual(gk);

  // Start from the discretized feasible start when the target declares m > 0,
  // else from the uniform distribution on the grid.
  Eigen::VectorXd mu0(o.cells);
  if (pot.m > 0.0) {
    FeasibleStart fs(pot.k2, pot.alpha, pot.m, 1);
    for (int i = 0; i < o.cells; ++i) {
      Eigen::VectorXd x(1);
      x[0] = gk.centers[i];
      mu0[i] = std::exp(fs.log_density_unnormalized(x));
    }
    mu0 /= mu0.sum();
  } else {
    mu0 = Eigen::VectorXd::Constant(o.cells, 1.0 / o.cells);
  }

  MixingTrajectory traj = mixing_trajectory(gk, mu0, o.eps, o.p);

  CsvWriter of(o.out_dir + "/oracle.csv");
  of.row({"step", "divergence"});
  for (std::size_t t = 0; t < traj.divergences.size(); ++t) {
    of.row({std::to_string(t), format_double(traj.divergences[t])});
  }

  std::cout << "tv_stationary=" << format_double(tv)
            << " reversibility_residual=" << format_double(rev)
            << " t_mix=" << traj.t_mix
            << " steps_recorded=" << traj.divergences.size() << "\n";
  return 0;
}

// -------------------------------------------------------------- schedule ---

struct ScheduleOpts {
  TargetOpts target;
  StepOpts step;
};

int cmd_schedule(const ScheduleOpts& o) {
  Potential pot = build_target(o.target, o.target.dim);
  if (std::isnan(o.step.eps) || std::isnan(o.step.beta)) {
    throw std::invalid_argument("schedule requires --eps and --beta");
  }
  Schedule sch = step_size(o.step.eps, o.step.beta, pot.dim, pot.alpha, pot.gamma,
                           o.step.c, parse_rule(o.step.schedule));
  PredictedBounds pb = predicted_bounds(sch, sch.radius);
  double lb = pot.m > 0.0 ? log_beta(pot.k2, pot.alpha, pot.m, pot.dim) : kNaN;

  std::cout << "rule,s,radius,omega,h,log_beta,mixing_upper,warm_log_log\n"
            << o.step.schedule << "," << format_double(sch.s) << ","
            << format_double(sch.radius) << "," << format_double(sch.omega) << ","
            << format_double(sch.h) << "," << format_double(lb) << ","
            << format_double(pb.mixing_upper) << "," << format_double(pb.warm_log_log)
            << "\n";
  return 0;
}

// ------------------------------------------------------------------ main ---

void add_target_flags(CLI::App* cmd, TargetOpts* t, bool with_dim = true) {
  cmd->add_option("--target", t->name, "Target: pi1, pi2, radial, gaussian")
      ->capture_default_str();
  if (with_dim) cmd->add_option("--dim", t->dim, "Dimension")->capture_default_str();
  cmd->add_option("--a", t->a, "pi1 quadratic coefficient")->capture_default_str();
  cmd->add_option("--alpha", t->alpha, "radial exponent")->capture_default_str();
  cmd->add_option("--m", t->m, "gaussian curvature")->capture_default_str();
}

void add_step_flags(CLI::App* cmd, StepOpts* s) {
  cmd->add_option("--step", s->step, "Step size, or 'auto' for the schedule")
      ->capture_default_str();
  cmd->add_option("--eps", s->eps, "Accuracy target for auto step");
  cmd->add_option("--beta", s->beta, "Warmness for auto step");
  cmd->add_option("--c", s->c, "Universal constant")->capture_default_str();
  cmd->add_option("--schedule", s->schedule, "Step rule: A or B")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Metropolis-Hastings sampling toolkit for thin-tailed targets"};
  app.require_subcommand(1);

  SampleOpts so;
  CLI::App* sample = app.add_subcommand("sample", "Run one chain, write trace and report");
  add_target_flags(sample, &so.target);
  add_step_flags(sample, &so.step);
  sample->add_option("--algo", so.algo, "rwm, mala, or mao")->capture_default_str();
  sample->add_option("--iters", so.iters)->capture_default_str();
  sample->add_option("--burnin", so.burnin)->capture_default_str();
  sample->add_option("--stride", so.stride)->capture_default_str();
  sample->add_option("--zeta", so.zeta, "Lazy-hold probability")->capture_default_str();
  sample->add_option("--seed", so.seed)->capture_default_str();
  sample->add_option("--mode-source", so.mode_source, "exact or optimize")
      ->capture_default_str();
  sample->add_option("--delta", so.delta, "Mode accuracy for --mode-source optimize");
  sample->add_option("--out", so.out_dir, "Output directory")->capture_default_str();

  BenchOpts bo;
  CLI::App* bench = app.add_subcommand("bench", "Dimension sweep, one row per (algo, dim)");
  add_target_flags(bench, &bo.target, false);
  add_step_flags(bench, &bo.step);
  bench->add_option("--algos", bo.algos, "Comma-separated algorithms")->capture_default_str();
  bench->add_option("--dims", bo.dims, "Comma-separated dimensions")->capture_default_str();
  bench->add_option("--iters", bo.iters)->capture_default_str();
  bench->add_option("--burnin", bo.burnin)->capture_default_str();
  bench->add_option("--zeta", bo.zeta)->capture_default_str();
  bench->add_option("--seed", bo.seed)->capture_default_str();
  bench->add_option("--threads", bo.threads, "Worker threads (0 = auto)")
      ->capture_default_str();
  bench->add_option("--out", bo.out_dir)->capture_default_str();

  OptimizeOpts oo;
  CLI::App* optimize = app.add_subcommand("optimize", "Find the mode by Bregman descent");
  add_target_flags(optimize, &oo.target);
  optimize->add_option("--l-rel", oo.l_rel, "Relative-smoothness constant");
  optimize->add_option("--grad-tol", oo.grad_tol)->capture_default_str();
  optimize->add_option("--max-iters", oo.max_iters)->capture_default_str();
  optimize->add_option("--x0", oo.x0, "Comma-separated start point");

  OracleOpts ro;
  CLI::App* oracle = app.add_subcommand("oracle", "1-D discretized-kernel verification");
  add_target_flags(oracle, &ro.target, false);
  oracle->add_option("--algo", ro.algo)->capture_default_str();
  oracle->add_option("--step", ro.h, "Step size")->capture_default_str();
  oracle->add_option("--zeta", ro.zeta)->capture_default_str();
  oracle->add_option("--lo", ro.lo)->capture_default_str();
  oracle->add_option("--hi", ro.hi)->capture_default_str();
  oracle->add_option("--cells", ro.cells)->capture_default_str();
  oracle->add_option("--eps", ro.eps, "Mixing tolerance")->capture_default_str();
  oracle->add_option("--p", ro.p, "Divergence order, 1 or 2")->capture_default_str();
  oracle->add_option("--out", ro.out_dir)->capture_default_str();

  ScheduleOpts co;
  CLI::App* schedule = app.add_subcommand("schedule", "Print h, omega, warmness, bounds");
  add_target_flags(schedule, &co.target);
  add_step_flags(schedule, &co.step);

  CLI11_PARSE(app, argc, argv);

  try {
    if (sample->parsed()) return cmd_sample(so);
    if (bench->parsed()) return cmd_bench(bo);
    if (optimize->parsed()) return cmd_optimize(oo);
    if (oracle->parsed()) return cmd_oracle(ro);
    if (schedule->parsed()) return cmd_schedule(co);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
