// Metropolis-Hastings chains with Gaussian proposals: random-walk (rwm),
// Langevin (mala), and the mode-anchored autoregressive proposal (mao).
//
// All three propose z ~ Normal(mean(x), 2h I) and differ only in the mean:
// x, x - h grad f(x), and x - h (x - x_tilde) respectively. Every density and
// ratio is handled in log space; acceptance compares log U against the log
// ratio, so potentials of order ||x||^4 never underflow.

#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "thinmc/potentials.hpp"
#include "thinmc/rng.hpp"

namespace thinmc {

enum class KernelKind { rwm, mala, mao };

struct ProposalKernel {
  KernelKind kind = KernelKind::rwm;
  double h = 0.0;
  Eigen::VectorXd mode_estimate;  // x_tilde, consumed by mao only
};

struct SamplerConfig {
  ProposalKernel kernel;
  double zeta = 0.5;  // lazy-hold probability, in [0, 1)
  long n_iters = 0;
  long burn_in = 0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;  // sub-stream id for parallel chains
  long record_stride = 1;
};

enum class StepTag { rejected = 0, accepted = 1, lazy = 2 };

struct StepResult {
  Eigen::VectorXd x_next;
  StepTag tag = StepTag::rejected;
  double f_next = 0.0;  // f(x_next), so callers avoid a re-evaluation
};

struct Trace {
  Eigen::MatrixXd states;             // one recorded state per row
  std::vector<double> log_densities;  // -f at each recorded state
  std::vector<StepTag> row_tags;      // outcome of the step that produced the row
  std::vector<std::uint8_t> accept_flags;  // every post-burn-in non-lazy proposal
  long n_proposals = 0;               // post-burn-in, lazy holds excluded
  long n_accepted = 0;
  long n_lazy = 0;
  SamplerConfig meta;

  double accept_rate() const {
    return n_proposals > 0 ? static_cast<double>(n_accepted) / n_proposals : 0.0;
  }
};

// Proposal mean at x for the configured kernel.
Eigen::VectorXd proposal_mean(const ProposalKernel& kernel, const Potential& pot,
                              const Eigen::VectorXd& x);

// log q_x(z) = -||z - mean(x)||^2/(4h) - (d/2) log(4 pi h).
double proposal_log_density(const ProposalKernel& kernel, const Potential& pot,
                            const Eigen::VectorXd& x, const Eigen::VectorXd& z);

// log of the unclamped acceptance ratio pi(z) q_z(x) / (pi(x) q_x(z));
// acceptance probability is min(1, exp of this).
double log_accept_ratio(const ProposalKernel& kernel, const Potential& pot,
                        const Eigen::VectorXd& x, const Eigen::VectorXd& z);

// One transition from x with known f(x). Draw order: lazy coin (only when
// zeta > 0), then the d proposal normals, then the acceptance uniform.
StepResult step(const SamplerConfig& config, const Potential& pot,
                const Eigen::VectorXd& x, double f_x, RngStream& rng);

// Runs n_iters transitions from x0 on a stream derived from (seed, stream),
// discarding burn_in and recording every record_stride-th state after it.
// Throws (naming the iteration) if the chain reaches a non-finite state.
Trace run_chain(const SamplerConfig& config, const Potential& pot,
                const Eigen::VectorXd& x0);

// Mean of min(1, exp(log ratio)) over n proposals drawn at a fixed x:
// the expected single-step acceptance at that point.
double estimate_acceptance_at(const SamplerConfig& config, const Potential& pot,
                              const Eigen::VectorXd& x, int n, RngStream& rng);

// KL(Normal(mu1, 2hI) || Normal(mu2, 2hI)) = ||mu1 - mu2||^2 / (4h).
// Pinsker then bounds the TV between the two proposals by sqrt(2 KL).
double kl_gaussian_shift(const Eigen::VectorXd& mu1, const Eigen::VectorXd& mu2,
                         double h);

}  // namespace thinmc
