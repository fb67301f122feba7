#include "thinmc/potentials.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "thinmc/rng.hpp"

namespace thinmc {

namespace {

// ||x||^2 summed in sorted order, so coordinate permutations of x evaluate
// bit-identically (radially symmetric potentials promise exact invariance).
double norm2_sorted(const Eigen::VectorXd& x) {
  std::vector<double> sq(static_cast<std::size_t>(x.size()));
  for (Eigen::Index i = 0; i < x.size(); ++i) sq[static_cast<std::size_t>(i)] = x[i] * x[i];
  std::sort(sq.begin(), sq.end());
  double s = 0.0;
  for (double v : sq) s += v;
  return s;
}

void check_dim(const Potential& pot, const Eigen::VectorXd& x, const char* who) {
  if (x.size() != pot.dim) {
    throw std::invalid_argument(std::string(who) + ": expected dimension " +
                                std::to_string(pot.dim) + ", got " +
                                std::to_string(x.size()));
  }
}

void validate_dim(int dim) {
  if (dim < 1) throw std::invalid_argument("target dimension must be >= 1");
}

#ifndef NDEBUG
void debug_check_growth(const Potential& pot) {
  GrowthReport rep = check_growth_constants(pot, 256, 3.0, 20240901u);
  assert(rep.ok && "declared k1 does not bound the gradient growth");
  (void)rep;
}
#else
void debug_check_growth(const Potential&) {}
#endif

}  // namespace

double eval_potential(const Potential& pot, const Eigen::VectorXd& x) {
  check_dim(pot, x, "eval_potential");
  double v = pot.f(x);
  if (!std::isfinite(v)) throw std::runtime_error("eval_potential: non-finite value");
  return v;
}

Eigen::VectorXd eval_gradient(const Potential& pot, const Eigen::VectorXd& x) {
  check_dim(pot, x, "eval_gradient");
  Eigen::VectorXd g = pot.grad(x);
  if (g.size() != pot.dim || !g.allFinite()) {
    throw std::runtime_error("eval_gradient: non-finite or misshapen gradient");
  }
  return g;
}

Potential make_pi1(int dim, double a) {
  validate_dim(dim);
  if (!(a >= 0.0)) throw std::invalid_argument("pi1: a must be >= 0");
  Potential pot;
  pot.name = "pi1";
  pot.dim = dim;
  pot.alpha = 4.0;
  pot.gamma = 4.0;
  pot.m = a;
  pot.k1 = 3.0 + a;
  pot.k2 = 3.0 + a;
  pot.mode = Eigen::VectorXd::Zero(dim);
  pot.f = [a](const Eigen::VectorXd& x) {
    double r2 = norm2_sorted(x);
    return 0.25 * r2 * r2 + 0.5 * a * r2;
  };
  pot.grad = [a](const Eigen::VectorXd& x) {
    return ((x.squaredNorm() + a) * x).eval();
  };
  debug_check_growth(pot);
  return pot;
}

Potential make_pi2(int dim) {
  validate_dim(dim);
  Potential pot;
  pot.name = "pi2";
  pot.dim = dim;
  pot.alpha = 4.0;
  pot.gamma = 4.0;
  pot.m = 0.0;  // Hessian at 0 is singular orthogonally to e1
  pot.k1 = 4.0;
  pot.k2 = 4.0;
  pot.mode = Eigen::VectorXd::Zero(dim);
  pot.f = [](const Eigen::VectorXd& x) {
    double r2 = norm2_sorted(x);
    return 0.25 * r2 * r2 + 0.5 * x[0] * x[0];
  };
  pot.grad = [](const Eigen::VectorXd& x) {
    Eigen::VectorXd g = x.squaredNorm() * x;
    g[0] += x[0];
    return g;
  };
  debug_check_growth(pot);
  return pot;
}

Potential make_radial(int dim, double alpha) {
  validate_dim(dim);
  if (!(alpha >= 2.0)) throw std::invalid_argument("radial: alpha must be >= 2");
  Potential pot;
  pot.name = "radial";
  pot.dim = dim;
  pot.alpha = alpha;
  pot.gamma = alpha;
  pot.m = (alpha == 2.0) ? 2.0 : 0.0;
  pot.k1 = alpha;
  pot.k2 = alpha * (alpha - 1.0);
  pot.mode = Eigen::VectorXd::Zero(dim);
  pot.f = [alpha](const Eigen::VectorXd& x) {
    return std::pow(norm2_sorted(x), 0.5 * alpha);
  };
  pot.grad = [alpha](const Eigen::VectorXd& x) {
    double r = x.norm();
    if (r == 0.0) return Eigen::VectorXd::Zero(x.size()).eval();
    // alpha r^(alpha-1) * x/r
    return (alpha * std::pow(r, alpha - 2.0) * x).eval();
  };
  debug_check_growth(pot);
  return pot;
}

Potential make_gaussian(int dim, double m) {
  validate_dim(dim);
  if (!(m > 0.0)) throw std::invalid_argument("gaussian: m must be > 0");
  Potential pot;
  pot.name = "gaussian";
  pot.dim = dim;
  pot.alpha = 2.0;
  pot.gamma = 2.0;
  pot.m = m;
  pot.k1 = m;
  pot.k2 = m;
  pot.mode = Eigen::VectorXd::Zero(dim);
  pot.f = [m](const Eigen::VectorXd& x) { return 0.5 * m * norm2_sorted(x); };
  pot.grad = [m](const Eigen::VectorXd& x) { return (m * x).eval(); };
  debug_check_growth(pot);
  return pot;
}

Potential make_target(const std::string& name, int dim, double param) {
  if (name == "pi1") return make_pi1(dim, param);
  if (name == "pi2") return make_pi2(dim);
  if (name == "radial") return make_radial(dim, param);
  if (name == "gaussian") return make_gaussian(dim, param);
  throw std::invalid_argument("unknown target '" + name +
                              "' (expected pi1, pi2, radial, gaussian)");
}

GrowthReport check_growth_constants(const Potential& pot, int n_samples,
                                    double radius, std::uint64_t seed) {
  if (n_samples < 1) throw std::invalid_argument("check_growth_constants: n_samples >= 1");
  if (!(radius > 0.0)) throw std::invalid_argument("check_growth_constants: radius > 0");
  if (!(pot.k1 > 0.0)) throw std::invalid_argument("check_growth_constants: k1 must be > 0");
  RngStream rng(seed);
  GrowthReport rep;
  for (int i = 0; i < n_samples; ++i) {
    // Uniform in the ball: uniform direction, radius ~ radius * U^(1/d).
    Eigen::VectorXd dir = rng.normal_vector(pot.dim);
    double nrm = dir.norm();
    if (nrm == 0.0) {
      --i;
      continue;
    }
    double r = radius * std::pow(rng.uniform(), 1.0 / pot.dim);
    Eigen::VectorXd x = pot.mode + (r / nrm) * dir;
    double shift = (x - pot.mode).norm();
    double bound = pot.k1 * (1.0 + std::pow(shift, pot.alpha - 1.0));
    double ratio = eval_gradient(pot, x).norm() / bound;
    rep.max_ratio = std::max(rep.max_ratio, ratio);
  }
  rep.ok = rep.max_ratio <= 1.0;
  return rep;
}

double finite_difference_check(const Potential& pot, const Eigen::VectorXd& x,
                               double step) {
  if (!(step > 0.0)) throw std::invalid_argument("finite_difference_check: step > 0");
  Eigen::VectorXd g = eval_gradient(pot, x);
  Eigen::VectorXd xp = x, xm = x;
  double worst = 0.0;
  for (int i = 0; i < pot.dim; ++i) {
    xp[i] = x[i] + step;
    xm[i] = x[i] - step;
    double cd = (eval_potential(pot, xp) - eval_potential(pot, xm)) / (2.0 * step);
    worst = std::max(worst, std::abs(cd - g[i]) / (1.0 + std::abs(g[i])));
    xp[i] = x[i];
    xm[i] = x[i];
  }
  return worst;
}

}  // namespace thinmc
