#include "thinmc/schedules.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace thinmc {

namespace {

void check_s(double s) {
  if (!(s > 0.0) || s > 1.0) {
    throw std::invalid_argument("tail mass s must lie in (0, 1]");
  }
}

void check_d(int d) {
  if (d < 1) throw std::invalid_argument("dimension must be >= 1");
}

double big_r(double s, int d) {
  double l = std::log(1.0 / s) / d;
  return 1.0 + std::max(std::pow(l, 0.25), std::sqrt(l));
}

}  // namespace

double radius_r(double s, int d) {
  check_s(s);
  check_d(d);
  return std::max(big_r(s, d), big_r(0.5, d));
}

double tau_alpha(double s, int d, double alpha) {
  check_s(s);
  check_d(d);
  if (!(alpha >= 2.0)) throw std::invalid_argument("tau_alpha: alpha must be >= 2");
  double l = std::log(1.0 / s);
  double base = 1.0 / alpha + l / d + std::sqrt(2.0 * l / (d * alpha));
  return std::pow(base, 1.0 / alpha);
}

Schedule step_size(double eps, double beta, int d, double alpha, double gamma,
                   double c, StepRule rule, std::optional<double> s_override) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("step_size: eps must lie in (0, 1)");
  if (!(beta >= 1.0)) throw std::invalid_argument("step_size: beta must be >= 1");
  if (!(c > 0.0)) throw std::invalid_argument("step_size: c must be > 0");
  if (!(alpha >= 2.0)) throw std::invalid_argument("step_size: alpha must be >= 2");
  if (!(gamma >= 2.0)) throw std::invalid_argument("step_size: gamma must be >= 2");
  check_d(d);

  Schedule sch;
  sch.rule = rule;
  sch.eps = eps;
  sch.beta = beta;
  sch.d = d;
  sch.alpha = alpha;
  sch.gamma = gamma;
  sch.c = c;
  sch.s = s_override.value_or(eps * eps / (3.0 * beta));
  check_s(sch.s);

  if (rule == StepRule::A) {
    sch.radius = radius_r(sch.s, d);
    sch.omega = alpha - 1.0;
  } else {
    sch.radius = tau_alpha(sch.s, d, alpha);
    sch.omega = std::max(2.0 * (alpha - 1.0) / gamma, (gamma + alpha - 2.0) / gamma);
  }
  sch.h = 1.0 / (c * sch.radius * std::pow(d, sch.omega));
  sch.predicted_mixing_bound = predicted_bounds(sch, sch.radius).mixing_upper;
  return sch;
}

PredictedBounds predicted_bounds(const Schedule& schedule, double tau_or_r) {
  if (!(tau_or_r > 0.0)) throw std::invalid_argument("predicted_bounds: radius must be > 0");
  PredictedBounds out;
  double log_beta = std::log(schedule.beta);
  out.warm_log_log = 1.0;
  if (log_beta > 1.0) {
    out.warm_log_log = std::max(1.0, std::log(log_beta / schedule.eps));
  }
  out.mixing_upper = schedule.c * tau_or_r * std::pow(schedule.d, schedule.omega) *
                     out.warm_log_log;
  return out;
}

double delta_tolerance(double h, double eps, double c) {
  if (!(h > 0.0)) throw std::invalid_argument("delta_tolerance: h must be > 0");
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("delta_tolerance: eps must lie in (0, 1)");
  if (!(c > 0.0)) throw std::invalid_argument("delta_tolerance: c must be > 0");
  return std::min(c * std::log(1.0 / eps) / h, std::sqrt(h));
}

}  // namespace thinmc
