// Target distributions given through their potential f, with pi ~ exp(-f).
//
// A Potential carries the analytic data the schedules and samplers consume:
// tail-growth exponent alpha, concentration exponent gamma, a strong-convexity
// constant m (0 when none is declared), and the growth constants k1 <= k2.
// Builtin targets come from the make_* factories; user-defined targets fill
// the struct directly (declared constants are trusted but checkable).

#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include <Eigen/Core>

namespace thinmc {

struct Potential {
  std::string name;
  int dim = 0;
  double alpha = 2.0;  // f grows like ||x||^alpha far from the mode
  double gamma = 2.0;  // concentration exponent (ball radius scales as d^(1/gamma))
  double m = 0.0;      // strong-convexity constant; 0 = not declared
  double k1 = 0.0;     // gradient growth: ||grad f(x)|| <= k1 (1 + ||x - mode||^(alpha-1))
  double k2 = 0.0;     // envelope constant used by the feasible start
  Eigen::VectorXd mode;
  std::function<double(const Eigen::VectorXd&)> f;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> grad;
};

// Checked evaluation: dimension match and finite result, throwing otherwise.
double eval_potential(const Potential& pot, const Eigen::VectorXd& x);
Eigen::VectorXd eval_gradient(const Potential& pot, const Eigen::VectorXd& x);

// f(x) = ||x||^4/4 + a ||x||^2/2; strongly convex with m = a, k1 = k2 = 3 + a.
Potential make_pi1(int dim, double a);

// f(x) = ||x||^4/4 + x1^2/2; convex but not strongly convex (m = 0).
Potential make_pi2(int dim);

// f(x) = ||x||^alpha, alpha >= 2; m = 2 when alpha = 2, else 0.
Potential make_radial(int dim, double alpha);

// f(x) = m ||x||^2 / 2, m > 0.
Potential make_gaussian(int dim, double m);

// Builtin lookup by name; param is a for pi1, alpha for radial, m for
// gaussian, and ignored for pi2.
Potential make_target(const std::string& name, int dim, double param);

struct GrowthReport {
  double max_ratio = 0.0;
  bool ok = false;
};

// Samples n points uniformly in the ball of the given radius around the mode
// and reports max ||grad f(x)|| / (k1 (1 + ||x - mode||^(alpha-1))).
// ok iff the max stays <= 1, i.e. the declared k1 really bounds the growth.
GrowthReport check_growth_constants(const Potential& pot, int n_samples,
                                    double radius, std::uint64_t seed);

// Max over coordinates of |central difference - analytic gradient| at x,
// relative to 1 + |analytic gradient|.
double finite_difference_check(const Potential& pot, const Eigen::VectorXd& x,
                               double step);

}  // namespace thinmc
