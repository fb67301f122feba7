#include "thinmc/grid_oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace thinmc {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;

// Gaussian(mean, 2h) mass outside [lo, hi].
double escape_mass(double mean, double h, double lo, double hi) {
  double sd = std::sqrt(2.0 * h);
  double left = 0.5 * std::erfc((mean - lo) / (sd * std::sqrt(2.0)));
  double right = 0.5 * std::erfc((hi - mean) / (sd * std::sqrt(2.0)));
  return left + right;
}

}  // namespace

GridKernel discretize(const ProposalKernel& kernel, const Potential& pot,
                      double zeta, const GridSpec& grid) {
  if (pot.dim != 1) throw std::invalid_argument("discretize: target must be 1-D");
  if (!(kernel.h > 0.0)) throw std::invalid_argument("discretize: h must be > 0");
  if (!(zeta >= 0.0 && zeta <= 1.0)) throw std::invalid_argument("discretize: zeta must lie in [0, 1]");
  if (grid.n_cells < 2 || !(grid.hi > grid.lo)) {
    throw std::invalid_argument("discretize: need at least 2 cells and hi > lo");
  }

  int n = grid.n_cells;
  double dx = (grid.hi - grid.lo) / n;

  GridKernel gk;
  gk.grid = grid;
  gk.centers.resize(n);
  Eigen::VectorXd f_vals(n), means(n);
  Eigen::VectorXd point(1);
  for (int i = 0; i < n; ++i) {
    gk.centers[i] = grid.lo + (i + 0.5) * dx;
    point[0] = gk.centers[i];
    f_vals[i] = eval_potential(pot, point);
    means[i] = proposal_mean(kernel, pot, point)[0];
  }

  double f_min = f_vals.minCoeff();
  Eigen::VectorXd weights = (-(f_vals.array() - f_min)).exp();
  double z = weights.sum();
  gk.pi_disc = weights / z;
  if (gk.pi_disc[0] > 1e-10 || gk.pi_disc[n - 1] > 1e-10) {
    throw std::invalid_argument("discretize: grid truncates the target");
  }

  double leakage = 0.0;
  for (int i = 0; i < n; ++i) {
    leakage += gk.pi_disc[i] * escape_mass(means[i], kernel.h, grid.lo, grid.hi);
  }
  if (leakage > 1e-6) {
    throw std::invalid_argument("discretize: proposal mass escapes the grid");
  }

  double log_norm = -0.5 * std::log(4.0 * kPi * kernel.h);
  gk.P = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    double row_sum = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      double dz = gk.centers[j] - means[i];
      double log_q = log_norm - dz * dz / (4.0 * kernel.h);
      double dzz = gk.centers[i] - means[j];
      double log_q_back = log_norm - dzz * dzz / (4.0 * kernel.h);
      double logr = (f_vals[i] - f_vals[j]) + log_q_back - log_q;
      double accept = logr >= 0.0 ? 1.0 : std::exp(logr);
      double p = (1.0 - zeta) * std::exp(log_q) * accept * dx;
      gk.P(i, j) = p;
      row_sum += p;
    }
    if (row_sum > 1.0 + 1e-12) {
      throw std::runtime_error("discretize: grid too coarse for this step size");
    }
    gk.P(i, i) = 1.0 - row_sum;
  }
  return gk;
}

Eigen::VectorXd stationary(const GridKernel& gk) {
  int n = static_cast<int>(gk.P.rows());
  if (gk.P.diagonal().minCoeff() >= 1.0 - 1e-14) {
    throw std::invalid_argument("stationary: kernel holds everywhere, fixed point not unique");
  }
  Eigen::VectorXd mu = Eigen::VectorXd::Constant(n, 1.0 / n);
  for (long it = 0; it < 1000000; ++it) {
    Eigen::VectorXd next = gk.P.transpose() * mu;
    next /= next.sum();
    double diff = (next - mu).lpNorm<1>();
    mu = std::move(next);
    if (diff <= 1e-12) return mu;
  }
  throw std::runtime_error("stationary: power iteration did not converge");
}

double reversibility_residual(const GridKernel& gk) {
  int n = static_cast<int>(gk.P.rows());
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double flow = gk.pi_disc[i] * gk.P(i, j) - gk.pi_disc[j] * gk.P(j, i);
      worst = std::max(worst, std::abs(flow));
    }
  }
  return worst;
}

double total_variation(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  if (a.size() != b.size()) throw std::invalid_argument("total_variation: size mismatch");
  return 0.5 * (a - b).lpNorm<1>();
}

double lp_divergence(const GridKernel& gk, const Eigen::VectorXd& mu, int p) {
  if (p != 1 && p != 2) throw std::invalid_argument("lp_divergence: p must be 1 or 2");
  if (mu.size() != gk.pi_disc.size()) throw std::invalid_argument("lp_divergence: size mismatch");
  double total = 0.0;
  for (Eigen::Index i = 0; i < mu.size(); ++i) {
    double pi_i = gk.pi_disc[i];
    if (!(pi_i > 0.0)) throw std::runtime_error("lp_divergence: target cell with zero mass");
    double rel = std::abs(mu[i] / pi_i - 1.0);
    total += (p == 1 ? rel : rel * rel) * pi_i;
  }
  return p == 1 ? total : std::sqrt(total);
}

MixingTrajectory mixing_trajectory(const GridKernel& gk, const Eigen::VectorXd& mu0,
                                   double eps, int p, long max_steps) {
  if (!(eps > 0.0)) throw std::invalid_argument("mixing_trajectory: eps must be > 0");
  if (max_steps < 1) throw std::invalid_argument("mixing_trajectory: max_steps must be >= 1");
  if (mu0.size() != gk.pi_disc.size() || mu0.minCoeff() < 0.0) {
    throw std::invalid_argument("mixing_trajectory: mu0 must be a distribution on the grid");
  }
  double mass = mu0.sum();
  if (std::abs(mass - 1.0) > 1e-8) {
    throw std::invalid_argument("mixing_trajectory: mu0 must sum to 1");
  }

  MixingTrajectory out;
  Eigen::VectorXd mu = mu0 / mass;
  double div = lp_divergence(gk, mu, p);
  out.divergences.push_back(div);
  if (div <= eps) {
    out.t_mix = 0;
    return out;
  }
  for (long t = 1; t <= max_steps; ++t) {
    mu = gk.P.transpose() * mu;
    mu /= mu.sum();
    div = lp_divergence(gk, mu, p);
    out.divergences.push_back(div);
    if (div <= eps) {
      out.t_mix = t;
      return out;
    }
  }
  return out;  // t_mix stays -1: tolerance unreached within max_steps
}

}  // namespace thinmc
