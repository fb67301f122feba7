#include "thinmc/samplers.hpp"

#include <cmath>
#include <stdexcept>

namespace thinmc {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;

void check_kernel(const ProposalKernel& kernel, const Potential& pot) {
  if (!(kernel.h > 0.0)) throw std::invalid_argument("kernel step size h must be > 0");
  if (kernel.kind == KernelKind::mao && kernel.mode_estimate.size() != pot.dim) {
    throw std::invalid_argument("mao kernel needs a mode estimate of the target's dimension");
  }
}

void check_config(const SamplerConfig& config, const Potential& pot) {
  check_kernel(config.kernel, pot);
  if (!(config.zeta >= 0.0 && config.zeta < 1.0)) {
    throw std::invalid_argument("zeta must lie in [0, 1)");
  }
  if (config.n_iters < 1) throw std::invalid_argument("n_iters must be >= 1");
  if (config.burn_in < 0 || config.burn_in >= config.n_iters) {
    throw std::invalid_argument("burn_in must lie in [0, n_iters)");
  }
  if (config.record_stride < 1) throw std::invalid_argument("record_stride must be >= 1");
}

// Ratio with f and the means already evaluated; shared by step() and the
// public log_accept_ratio so f is never computed twice per transition.
double log_ratio_given(double h, double f_x, double f_z,
                       const Eigen::VectorXd& x, const Eigen::VectorXd& z,
                       const Eigen::VectorXd& mean_x, const Eigen::VectorXd& mean_z) {
  double forward = (z - mean_x).squaredNorm();
  double backward = (x - mean_z).squaredNorm();
  return (f_x - f_z) + (forward - backward) / (4.0 * h);
}

}  // namespace

Eigen::VectorXd proposal_mean(const ProposalKernel& kernel, const Potential& pot,
                              const Eigen::VectorXd& x) {
  check_kernel(kernel, pot);
  switch (kernel.kind) {
    case KernelKind::rwm:
      return x;
    case KernelKind::mala:
      return x - kernel.h * eval_gradient(pot, x);
    case KernelKind::mao:
      return x - kernel.h * (x - kernel.mode_estimate);
  }
  throw std::logic_error("unreachable kernel kind");
}

double proposal_log_density(const ProposalKernel& kernel, const Potential& pot,
                            const Eigen::VectorXd& x, const Eigen::VectorXd& z) {
  Eigen::VectorXd mean = proposal_mean(kernel, pot, x);
  double d = static_cast<double>(pot.dim);
  return -(z - mean).squaredNorm() / (4.0 * kernel.h) -
         0.5 * d * std::log(4.0 * kPi * kernel.h);
}

double log_accept_ratio(const ProposalKernel& kernel, const Potential& pot,
                        const Eigen::VectorXd& x, const Eigen::VectorXd& z) {
  check_kernel(kernel, pot);
  double f_x = eval_potential(pot, x);
  double f_z = eval_potential(pot, z);
  return log_ratio_given(kernel.h, f_x, f_z, x, z,
                         proposal_mean(kernel, pot, x),
                         proposal_mean(kernel, pot, z));
}

StepResult step(const SamplerConfig& config, const Potential& pot,
                const Eigen::VectorXd& x, double f_x, RngStream& rng) {
  check_config(config, pot);
  if (config.zeta > 0.0 && rng.uniform() < config.zeta) {
    return {x, StepTag::lazy, f_x};
  }
  const ProposalKernel& kernel = config.kernel;
  Eigen::VectorXd mean_x = proposal_mean(kernel, pot, x);
  Eigen::VectorXd z = mean_x + std::sqrt(2.0 * kernel.h) * rng.normal_vector(pot.dim);
  double f_z = eval_potential(pot, z);
  double logr = log_ratio_given(kernel.h, f_x, f_z, x, z, mean_x,
                                proposal_mean(kernel, pot, z));
  double u = rng.uniform();
  if (std::log(u) < logr) {
    return {std::move(z), StepTag::accepted, f_z};
  }
  return {x, StepTag::rejected, f_x};
}

Trace run_chain(const SamplerConfig& config, const Potential& pot,
                const Eigen::VectorXd& x0) {
  check_config(config, pot);
  if (x0.size() != pot.dim || !x0.allFinite()) {
    throw std::invalid_argument("run_chain: x0 must be finite with the target's dimension");
  }

  long n_record_span = config.n_iters - config.burn_in;
  long n_rows = (n_record_span + config.record_stride - 1) / config.record_stride;

  Trace trace;
  trace.meta = config;
  trace.states.resize(n_rows, pot.dim);
  trace.log_densities.resize(static_cast<std::size_t>(n_rows));
  trace.row_tags.resize(static_cast<std::size_t>(n_rows));
  trace.accept_flags.reserve(static_cast<std::size_t>(n_record_span));

  RngStream rng(config.seed, config.stream);
  Eigen::VectorXd x = x0;
  double f_x = eval_potential(pot, x0);

  for (long t = 1; t <= config.n_iters; ++t) {
    StepResult out = step(config, pot, x, f_x, rng);
    x = std::move(out.x_next);
    f_x = out.f_next;
    if (!x.allFinite()) {
      throw std::runtime_error("run_chain: non-finite state at iteration " + std::to_string(t));
    }
    if (t <= config.burn_in) continue;

    if (out.tag == StepTag::lazy) {
      ++trace.n_lazy;
    } else {
      ++trace.n_proposals;
      bool accepted = out.tag == StepTag::accepted;
      trace.n_accepted += accepted ? 1 : 0;
      trace.accept_flags.push_back(accepted ? 1 : 0);
    }

    long k = t - config.burn_in - 1;
    if (k % config.record_stride == 0) {
      long row = k / config.record_stride;
      trace.states.row(row) = x;
      trace.log_densities[static_cast<std::size_t>(row)] = -f_x;
      trace.row_tags[static_cast<std::size_t>(row)] = out.tag;
    }
  }
  return trace;
}

double estimate_acceptance_at(const SamplerConfig& config, const Potential& pot,
                              const Eigen::VectorXd& x, int n, RngStream& rng) {
  check_config(config, pot);
  if (n < 1) throw std::invalid_argument("estimate_acceptance_at: n must be >= 1");
  const ProposalKernel& kernel = config.kernel;
  double f_x = eval_potential(pot, x);
  Eigen::VectorXd mean_x = proposal_mean(kernel, pot, x);
  double root = std::sqrt(2.0 * kernel.h);
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd z = mean_x + root * rng.normal_vector(pot.dim);
    double f_z = eval_potential(pot, z);
    double logr = log_ratio_given(kernel.h, f_x, f_z, x, z, mean_x,
                                  proposal_mean(kernel, pot, z));
    total += logr >= 0.0 ? 1.0 : std::exp(logr);
  }
  return total / n;
}

double kl_gaussian_shift(const Eigen::VectorXd& mu1, const Eigen::VectorXd& mu2,
                         double h) {
  if (!(h > 0.0)) throw std::invalid_argument("kl_gaussian_shift: h must be > 0");
  if (mu1.size() != mu2.size()) {
    throw std::invalid_argument("kl_gaussian_shift: dimension mismatch");
  }
  return (mu1 - mu2).squaredNorm() / (4.0 * h);
}

}  // namespace thinmc
