// Mode finding by the primal gradient scheme under relative smoothness.
//
// The reference function h_ref(x) = ||x||^2/2 + ||x||^alpha/alpha matches the
// targets' tail growth, so one Bregman proximal step has a closed radial form:
// solve rho (1 + rho^(alpha-2)) = ||v|| for the new radius along
// v = grad h_ref(x) - grad/L_rel. Plain gradient descent falls out at alpha=2.

#pragma once

#include <Eigen/Core>

#include "thinmc/potentials.hpp"

namespace thinmc {

struct OptimizerConfig {
  double l_rel = 1.0;  // relative-smoothness constant of f against h_ref
  long max_iters = 10000;
  double grad_tol = 1e-8;
  double alpha = 2.0;
};

struct ModeResult {
  Eigen::VectorXd x_tilde;
  long iters = 0;
  double grad_norm = 0.0;
};

double reference_value(const Eigen::VectorXd& x, double alpha);
Eigen::VectorXd reference_gradient(const Eigen::VectorXd& x, double alpha);

// Bregman divergence of h_ref: h_ref(x) - h_ref(y) - <grad h_ref(y), x - y>.
double reference_bregman(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                         double alpha);

// Exact minimizer of f(x0) + <grad, x - x0> + l_rel * D_href(x, x0).
Eigen::VectorXd prox_step(const Eigen::VectorXd& x, const Eigen::VectorXd& grad,
                          double l_rel, double alpha);

// Iterates prox_step until ||grad f|| <= grad_tol or max_iters. Descent is
// monotone in f whenever l_rel really is a relative-smoothness constant.
ModeResult find_mode(const Potential& pot, const Eigen::VectorXd& x0,
                     const OptimizerConfig& config);

// Conservative default constant for the builtin targets: k2 * max(1, 2^(alpha-3)) * 4.
double default_l_rel(const Potential& pot);

}  // namespace thinmc
