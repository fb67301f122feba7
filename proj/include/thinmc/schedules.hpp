// Closed-form step-size schedules, radius functions, and predicted bounds.
//
// Rule A covers the strongly log-concave smooth class (radius r(s), exponent
// omega = alpha - 1); rule B covers the thin-tailed class with concentration
// exponent gamma (radius tau(s), omega = max(2(alpha-1)/gamma,
// (gamma+alpha-2)/gamma)). The tail-mass parameter defaults to eps^2/(3 beta).

#pragma once

#include <optional>

namespace thinmc {

enum class StepRule { A, B };

struct Schedule {
  StepRule rule = StepRule::B;
  double eps = 0.0;
  double beta = 1.0;
  int d = 0;
  double alpha = 2.0;
  double gamma = 2.0;
  double c = 1.0;
  double s = 0.0;       // tail mass, eps^2/(3 beta) unless overridden
  double radius = 0.0;  // r(s) under A, tau(s) under B
  double h = 0.0;
  double omega = 0.0;
  double predicted_mixing_bound = 0.0;
};

struct PredictedBounds {
  double mixing_upper = 0.0;
  double warm_log_log = 1.0;  // log(log(beta)/eps), clamped below at 1
};

// r(s) = max(R(s), R(1/2)) with R(s) = 1 + max((log(1/s)/d)^(1/4),
// (log(1/s)/d)^(1/2)). Non-increasing in s; s = 1 allowed as the limit.
double radius_r(double s, int d);

// tau(s) = (1/alpha + log(1/s)/d + sqrt(2 log(1/s)/(d alpha)))^(1/alpha).
// The ball B(0, tau(s) d^(1/alpha)) carries target mass >= 1 - s.
double tau_alpha(double s, int d, double alpha);

// Builds the full schedule: h = 1/(c * radius * d^omega) with the rule's
// radius and omega, s = eps^2/(3 beta) unless s_override is given.
Schedule step_size(double eps, double beta, int d, double alpha, double gamma,
                   double c, StepRule rule,
                   std::optional<double> s_override = std::nullopt);

// Mixing-time upper bound c * tau_or_r * d^omega * max(1, log(log(beta)/eps)),
// for reporting against empirical mixing estimates.
PredictedBounds predicted_bounds(const Schedule& schedule, double tau_or_r);

// Default mode-accuracy target: min(c * log(1/eps)/h, sqrt(h)). The cap keeps
// the tolerance below one proposal standard deviation.
double delta_tolerance(double h, double eps, double c);

}  // namespace thinmc
