#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

#include "thinmc/potentials.hpp"
#include "thinmc/rng.hpp"

using namespace thinmc;

namespace {

Eigen::VectorXd ball_point(RngStream& rng, int dim, double radius) {
  Eigen::VectorXd dir = rng.normal_vector(dim);
  return (radius * std::pow(rng.uniform(), 1.0 / dim) / dir.norm()) * dir;
}

std::vector<Potential> all_builtins() {
  return {make_pi1(3, 1.0), make_pi1(3, 0.5), make_pi2(3),   make_radial(3, 2.0),
          make_radial(3, 3.0), make_radial(3, 4.0), make_gaussian(3, 1.0),
          make_gaussian(3, 2.5)};
}

}  // namespace

TEST_CASE("quartic target values and gradients at hand-checked points") {
  Potential pot = make_pi1(2, 1.0);
  Eigen::VectorXd x(2);
  x << 1.0, 0.0;
  CHECK(eval_potential(pot, x) == doctest::Approx(0.75).epsilon(1e-14));
  Eigen::VectorXd g = eval_gradient(pot, x);
  CHECK(g[0] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(g[1] == 0.0);

  Potential pot2 = make_pi2(2);
  x << 1.0, 1.0;
  CHECK(eval_potential(pot2, x) == doctest::Approx(1.0 + 0.5).epsilon(1e-14));
  Eigen::VectorXd g2 = eval_gradient(pot2, x);
  CHECK(g2[0] == doctest::Approx(3.0).epsilon(1e-14));  // ||x||^2 x_1 + x_1
  CHECK(g2[1] == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("declared class constants of the builtins") {
  Potential p1 = make_pi1(4, 1.0);
  CHECK(p1.m == 1.0);
  CHECK(p1.k1 == 4.0);
  CHECK(p1.alpha == 4.0);
  CHECK(p1.gamma == 4.0);

  CHECK(make_pi2(4).m == 0.0);
  CHECK(make_radial(4, 2.0).m == 2.0);
  CHECK(make_radial(4, 3.0).m == 0.0);
  CHECK(make_gaussian(4, 2.5).m == 2.5);
}

TEST_CASE("finite differences agree with analytic gradients at fixed points") {
  Eigen::VectorXd x(2);
  x << 1.0, 1.0;
  CHECK(finite_difference_check(make_pi1(2, 1.0), x, 1e-5) < 1e-6);

  CHECK(finite_difference_check(make_pi2(2), Eigen::VectorXd::Zero(2), 1e-5) < 1e-9);

  Eigen::VectorXd y(3);
  y << 2.0, 0.0, 0.0;
  CHECK(finite_difference_check(make_radial(3, 4.0), y, 1e-5) < 1e-5);
}

TEST_CASE("finite differences stay below 1e-5 at random points for every builtin") {
  for (const Potential& pot : all_builtins()) {
    RngStream rng(77);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      worst = std::max(worst, finite_difference_check(pot, ball_point(rng, pot.dim, 3.0), 1e-5));
    }
    INFO("target ", pot.name, " alpha ", pot.alpha);
    CHECK(worst <= 1e-5);
  }
}

TEST_CASE("strong convexity of the quartic target with its declared constant") {
  Potential pot = make_pi1(3, 1.0);
  RngStream rng(101);
  for (int i = 0; i < 1000; ++i) {
    Eigen::VectorXd x = ball_point(rng, 3, 5.0);
    Eigen::VectorXd y = ball_point(rng, 3, 5.0);
    double lhs = eval_potential(pot, y);
    double rhs = eval_potential(pot, x) + eval_gradient(pot, x).dot(y - x) +
                 0.5 * pot.m * (y - x).squaredNorm();
    REQUIRE(lhs >= rhs - 1e-9);
  }
}

TEST_CASE("radially symmetric value is exactly permutation invariant") {
  Potential pot = make_pi1(6, 1.0);
  RngStream rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd x = rng.normal_vector(6) * 1.7;
    double base = eval_potential(pot, x);
    std::vector<int> perm(6);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), std::mt19937(trial));
    Eigen::VectorXd px(6);
    for (int i = 0; i < 6; ++i) px[i] = x[perm[static_cast<std::size_t>(i)]];
    REQUIRE(eval_potential(pot, px) == base);
  }
}

TEST_CASE("pure power targets are homogeneous of their exponent") {
  Potential pot = make_radial(4, 3.0);
  RngStream rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::VectorXd x = rng.normal_vector(4);
    double lambda = 0.3 + 2.0 * rng.uniform();
    double lhs = eval_potential(pot, lambda * x);
    double rhs = std::pow(lambda, 3.0) * eval_potential(pot, x);
    REQUIRE(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
}

TEST_CASE("growth check accepts valid constants and rejects absurd ones") {
  Potential pot = make_pi1(2, 1.0);

  Potential tight = pot;
  tight.k1 = 2.0;  // ||grad f|| = r^3 + r <= 2 (1 + r^3) for all r
  GrowthReport rep = check_growth_constants(tight, 1000, 3.0, 11);
  CHECK(rep.ok);
  CHECK(rep.max_ratio <= 1.0);

  Potential wrong = pot;
  wrong.k1 = 0.01;
  CHECK_FALSE(check_growth_constants(wrong, 1000, 3.0, 11).ok);

  Potential gauss = make_gaussian(2, 1.0);
  CHECK(check_growth_constants(gauss, 500, 3.0, 12).ok);
}

TEST_CASE("evaluation validates dimension and finiteness") {
  Potential pot = make_pi1(2, 1.0);
  CHECK_THROWS_AS(eval_potential(pot, Eigen::VectorXd::Zero(3)), std::invalid_argument);
  CHECK_THROWS_AS(eval_gradient(pot, Eigen::VectorXd::Zero(1)), std::invalid_argument);

  Eigen::VectorXd huge = Eigen::VectorXd::Constant(2, 1e200);
  CHECK_THROWS_AS(eval_potential(pot, huge), std::runtime_error);
}

TEST_CASE("builtin lookup dispatches by name and validates parameters") {
  CHECK(make_target("pi1", 2, 1.0).name == "pi1");
  CHECK(make_target("pi2", 2, 0.0).name == "pi2");
  CHECK(make_target("radial", 2, 3.0).alpha == 3.0);
  CHECK(make_target("gaussian", 2, 2.0).m == 2.0);
  CHECK_THROWS_AS(make_target("cauchy", 2, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_radial(2, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(make_gaussian(2, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(make_pi1(0, 1.0), std::invalid_argument);
}
