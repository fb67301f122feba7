#include "thinmc/feasible_start.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace thinmc {

namespace {

constexpr int kTableSize = 8193;  // grid points of the radial CDF table
constexpr double kLogTailCut = 60.0;  // stop where the integrand drops e^-60 below peak

void check_params(double k2, double alpha, double m, int d) {
  if (!(k2 > 0.0)) throw std::invalid_argument("feasible start: k2 must be > 0");
  if (!(alpha >= 2.0)) throw std::invalid_argument("feasible start: alpha must be >= 2");
  if (!(m > 0.0)) throw std::invalid_argument("feasible start: m must be > 0");
  if (d < 1) throw std::invalid_argument("feasible start: d must be >= 1");
}

}  // namespace

double log_beta(double k2, double alpha, double m, int d) {
  check_params(k2, alpha, m, d);
  double dd = static_cast<double>(d);
  return 0.5 * dd * std::log(2.0 / m) + std::lgamma(0.5 * dd + 1.0) -
         std::lgamma(dd / alpha) - std::log(dd) + std::log(alpha) + 0.5 * k2 +
         (dd / alpha) * std::log(2.0 * k2 / (alpha * (alpha - 1.0)));
}

FeasibleStart::FeasibleStart(double k2, double alpha, double m, int d,
                             Eigen::VectorXd mode_shift)
    : k2_(k2), alpha_(alpha), m_(m), d_(d), mode_shift_(std::move(mode_shift)) {
  check_params(k2, alpha, m, d);
  if (mode_shift_.size() == 0) mode_shift_ = Eigen::VectorXd::Zero(d);
  if (mode_shift_.size() != d) {
    throw std::invalid_argument("feasible start: mode_shift dimension mismatch");
  }
  log_beta_ = thinmc::log_beta(k2, alpha, m, d);

  // Log of the radial integrand r^(d-1) exp(-f0(r)).
  auto log_g = [this](double r) {
    if (r == 0.0) return d_ == 1 ? -f0_radial(0.0) : -std::numeric_limits<double>::infinity();
    return (d_ - 1) * std::log(r) - f0_radial(r);
  };

  // Peak of log_g: r=0 for d=1, else the root of (d-1)/r = f0'(r).
  double r_peak = 0.0;
  if (d_ > 1) {
    auto slope = [this](double r) {
      return (d_ - 1) / r - k2_ * (r + std::pow(r, alpha_ - 1.0) / (alpha_ - 1.0));
    };
    double lo = 1e-12, hi = 1.0;
    while (slope(hi) > 0.0) hi *= 2.0;
    for (int i = 0; i < 200 && hi - lo > 1e-12 * hi; ++i) {
      double mid = 0.5 * (lo + hi);
      (slope(mid) > 0.0 ? lo : hi) = mid;
    }
    r_peak = 0.5 * (lo + hi);
  }
  double peak_value = log_g(std::max(r_peak, 1e-300));

  double r_hi = std::max(2.0 * r_peak, 1.0);
  while (log_g(r_hi) > peak_value - kLogTailCut) r_hi *= 2.0;

  r_grid_.resize(kTableSize);
  cdf_.resize(kTableSize);
  double step = r_hi / (kTableSize - 1);
  double prev = d_ == 1 ? std::exp(log_g(0.0) - peak_value) : 0.0;
  double total = 0.0;
  cdf_[0] = 0.0;
  r_grid_[0] = 0.0;
  for (int i = 1; i < kTableSize; ++i) {
    double r = i * step;
    double g = std::exp(log_g(r) - peak_value);
    if (!std::isfinite(g)) {
      throw std::runtime_error("feasible start: non-finite radial integrand");
    }
    total += 0.5 * (prev + g) * step;
    r_grid_[i] = r;
    cdf_[i] = total;
    prev = g;
  }
  if (!(total > 0.0)) throw std::runtime_error("feasible start: degenerate radial density");
  for (double& c : cdf_) c /= total;
}

double FeasibleStart::f0_radial(double r) const {
  return k2_ * (0.5 * r * r + std::pow(r, alpha_) / (alpha_ * (alpha_ - 1.0)));
}

double FeasibleStart::log_density_unnormalized(const Eigen::VectorXd& x) const {
  if (x.size() != d_) throw std::invalid_argument("feasible start: dimension mismatch");
  return -f0_radial((x - mode_shift_).norm());
}

double FeasibleStart::radial_cdf(double r) const {
  if (r <= 0.0) return 0.0;
  if (r >= r_grid_.back()) return 1.0;
  auto it = std::upper_bound(r_grid_.begin(), r_grid_.end(), r);
  std::size_t j = static_cast<std::size_t>(it - r_grid_.begin());
  double t = (r - r_grid_[j - 1]) / (r_grid_[j] - r_grid_[j - 1]);
  return cdf_[j - 1] + t * (cdf_[j] - cdf_[j - 1]);
}

Eigen::VectorXd FeasibleStart::sample(RngStream& rng) const {
  double u = rng.uniform();
  auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  std::size_t j = std::min(static_cast<std::size_t>(it - cdf_.begin()),
                           cdf_.size() - 1);
  if (j == 0) j = 1;
  double span = cdf_[j] - cdf_[j - 1];
  double t = span > 0.0 ? (u - cdf_[j - 1]) / span : 0.0;
  double r = r_grid_[j - 1] + t * (r_grid_[j] - r_grid_[j - 1]);

  Eigen::VectorXd dir = rng.normal_vector(d_);
  double nrm = dir.norm();
  while (nrm == 0.0) {
    dir = rng.normal_vector(d_);
    nrm = dir.norm();
  }
  return mode_shift_ + (r / nrm) * dir;
}

std::vector<Eigen::VectorXd> sample_start(const FeasibleStart& fs, int n,
                                          std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample_start: n must be >= 1");
  RngStream rng(seed);
  std::vector<Eigen::VectorXd> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out.push_back(fs.sample(rng));
  return out;
}

WarmnessReport verify_warmness_grid(const FeasibleStart& fs, const Potential& pot,
                                    double lo, double hi, int n_cells) {
  if (fs.d() != 1 || pot.dim != 1) {
    throw std::invalid_argument("verify_warmness_grid: grid check is 1-D only");
  }
  if (!(hi > lo) || n_cells < 16) {
    throw std::invalid_argument("verify_warmness_grid: bad grid");
  }

  double dx = (hi - lo) / n_cells;
  Eigen::VectorXd log_mu(n_cells), log_pi(n_cells);
  Eigen::VectorXd x(1);
  for (int i = 0; i < n_cells; ++i) {
    x[0] = lo + (i + 0.5) * dx;
    log_mu[i] = fs.log_density_unnormalized(x);
    log_pi[i] = -eval_potential(pot, x);
  }

  // Normalize each density on the grid; everything stays in log space until
  // the per-cell weights, which are exponentiated relative to their max.
  auto normalize = [n_cells](Eigen::VectorXd& logs) {
    double mx = logs.maxCoeff();
    double total = 0.0;
    for (int i = 0; i < n_cells; ++i) total += std::exp(logs[i] - mx);
    double log_z = mx + std::log(total);
    logs.array() -= log_z;
    return log_z;
  };
  Eigen::VectorXd mu_rel = log_mu, pi_rel = log_pi;
  normalize(mu_rel);
  normalize(pi_rel);

  // A density with visible mass at the edge cells would be truncated.
  double edge_mu = std::max(std::exp(mu_rel[0]), std::exp(mu_rel[n_cells - 1]));
  double edge_pi = std::max(std::exp(pi_rel[0]), std::exp(pi_rel[n_cells - 1]));
  if (edge_mu > 1e-10 || edge_pi > 1e-10) {
    throw std::invalid_argument("verify_warmness_grid: grid too narrow for the densities");
  }

  WarmnessReport rep;
  rep.max_log_ratio = (mu_rel - pi_rel).maxCoeff();
  rep.ok = rep.max_log_ratio <= fs.log_beta() + 1e-6;
  return rep;
}

}  // namespace thinmc
