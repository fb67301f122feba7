// Brute-force verification of the samplers at dimension 1: the transition
// kernel is discretized into an explicit row-stochastic matrix over a uniform
// grid, whose stationary law, reversibility residual, and divergence decay
// can then be checked directly against the target and the schedule bounds.
//
// Off-diagonal entries are midpoint approximations of
// (1 - zeta) q_{x_i}(x_j) A(x_i, x_j) dx; the diagonal absorbs the remaining
// mass (rejection + lazy + self-cell), so rows sum to one by construction and
// the matrix inherits the exact reversibility of the continuous kernel.

#pragma once

#include <vector>

#include <Eigen/Core>

#include "thinmc/potentials.hpp"
#include "thinmc/samplers.hpp"

namespace thinmc {

struct GridSpec {
  double lo = 0.0;
  double hi = 0.0;
  int n_cells = 0;
};

struct GridKernel {
  GridSpec grid;
  Eigen::MatrixXd P;        // row-stochastic transition matrix
  Eigen::VectorXd pi_disc;  // discretized normalized target
  Eigen::VectorXd centers;
};

// Builds the matrix for a 1-D target. Throws when the grid truncates the
// target (edge-cell mass above 1e-10 of the total) or when the stationary-
// weighted proposal mass escaping [lo, hi] exceeds 1e-6.
GridKernel discretize(const ProposalKernel& kernel, const Potential& pot,
                      double zeta, const GridSpec& grid);

// Fixed point of mu -> P^T mu by power iteration from the uniform start,
// to L1 tolerance 1e-12 (at most 10^6 sweeps). Rejects an identity kernel,
// for which every distribution is a fixed point.
Eigen::VectorXd stationary(const GridKernel& gk);

// max over pairs of |pi_i P_ij - pi_j P_ji|.
double reversibility_residual(const GridKernel& gk);

// 0.5 * L1 distance between two distributions.
double total_variation(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

// L_p divergence (sum |mu_i/pi_i - 1|^p pi_i)^(1/p) against gk.pi_disc,
// p in {1, 2}; d_1 equals twice the total variation.
double lp_divergence(const GridKernel& gk, const Eigen::VectorXd& mu, int p);

struct MixingTrajectory {
  std::vector<double> divergences;  // d_p at steps 0, 1, ...
  long t_mix = -1;                  // first step with d_p <= eps; -1 if unreached
};

// Iterates mu <- P^T mu recording d_p per step until the divergence drops
// to eps or max_steps is reached.
MixingTrajectory mixing_trajectory(const GridKernel& gk, const Eigen::VectorXd& mu0,
                                   double eps, int p, long max_steps = 100000);

}  // namespace thinmc
