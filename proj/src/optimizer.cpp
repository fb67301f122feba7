#include "thinmc/optimizer.hpp"

#include <cmath>
#include <stdexcept>

namespace thinmc {

namespace {

void check_alpha(double alpha) {
  if (!(alpha >= 2.0)) throw std::invalid_argument("reference function needs alpha >= 2");
}

// Root of rho (1 + rho^(alpha-2)) = target on [0, target], which exists and
// is unique because the left side is strictly increasing.
double solve_radius(double target, double alpha) {
  if (target == 0.0) return 0.0;
  auto value = [alpha](double rho) { return rho * (1.0 + std::pow(rho, alpha - 2.0)); };
  double lo = 0.0, hi = target;
  for (int i = 0; i < 200 && (hi - lo) > 1e-14 * hi; ++i) {
    double mid = 0.5 * (lo + hi);
    (value(mid) < target ? lo : hi) = mid;
  }
  double rho = 0.5 * (lo + hi);
  // Two Newton polishes tighten the bisection result to full precision.
  for (int i = 0; i < 2; ++i) {
    double pw = std::pow(rho, alpha - 2.0);
    double deriv = 1.0 + (alpha - 1.0) * pw;
    rho -= (rho * (1.0 + pw) - target) / deriv;
    if (rho < 0.0) rho = 0.0;
  }
  return rho;
}

}  // namespace

double reference_value(const Eigen::VectorXd& x, double alpha) {
  check_alpha(alpha);
  double r = x.norm();
  return 0.5 * r * r + std::pow(r, alpha) / alpha;
}

Eigen::VectorXd reference_gradient(const Eigen::VectorXd& x, double alpha) {
  check_alpha(alpha);
  double r = x.norm();
  double scale = (r == 0.0) ? 1.0 : 1.0 + std::pow(r, alpha - 2.0);
  return scale * x;
}

double reference_bregman(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                         double alpha) {
  if (x.size() != y.size()) throw std::invalid_argument("reference_bregman: dimension mismatch");
  return reference_value(x, alpha) - reference_value(y, alpha) -
         reference_gradient(y, alpha).dot(x - y);
}

Eigen::VectorXd prox_step(const Eigen::VectorXd& x, const Eigen::VectorXd& grad,
                          double l_rel, double alpha) {
  check_alpha(alpha);
  if (!(l_rel > 0.0)) throw std::invalid_argument("prox_step: l_rel must be > 0");
  if (x.size() != grad.size()) throw std::invalid_argument("prox_step: dimension mismatch");
  if (alpha == 2.0) {
    // grad h_ref = 2x, so the first-order condition is explicit.
    return x - grad / (2.0 * l_rel);
  }
  Eigen::VectorXd v = reference_gradient(x, alpha) - grad / l_rel;
  double vn = v.norm();
  if (vn == 0.0) return Eigen::VectorXd::Zero(x.size());
  double rho = solve_radius(vn, alpha);
  return v * (rho / vn);
}

ModeResult find_mode(const Potential& pot, const Eigen::VectorXd& x0,
                     const OptimizerConfig& config) {
  if (!(config.l_rel > 0.0) || !(config.grad_tol > 0.0) || config.max_iters < 1) {
    throw std::invalid_argument("find_mode: config values must be positive");
  }
  check_alpha(config.alpha);
  if (x0.size() != pot.dim || !x0.allFinite()) {
    throw std::invalid_argument("find_mode: x0 must be finite with the target's dimension");
  }

  ModeResult res;
  res.x_tilde = x0;
  Eigen::VectorXd g = eval_gradient(pot, res.x_tilde);
  res.grad_norm = g.norm();
  while (res.grad_norm > config.grad_tol && res.iters < config.max_iters) {
    res.x_tilde = prox_step(res.x_tilde, g, config.l_rel, config.alpha);
    if (!res.x_tilde.allFinite()) {
      throw std::runtime_error("find_mode: non-finite iterate at iteration " +
                               std::to_string(res.iters + 1));
    }
    ++res.iters;
    g = eval_gradient(pot, res.x_tilde);
    res.grad_norm = g.norm();
  }
  return res;
}

double default_l_rel(const Potential& pot) {
  if (!(pot.k2 > 0.0)) throw std::invalid_argument("default_l_rel: target must declare k2 > 0");
  return pot.k2 * std::max(1.0, std::pow(2.0, pot.alpha - 3.0)) * 4.0;
}

}  // namespace thinmc
