#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "thinmc/feasible_start.hpp"
#include "thinmc/potentials.hpp"
#include "thinmc/rng.hpp"

using namespace thinmc;

TEST_CASE("warmness constant at hand-checked parameters") {
  // k2 = 1, alpha = 2, m = 2, d = 2: every term cancels except k2/2.
  CHECK(log_beta(1.0, 2.0, 2.0, 2) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(log_beta(2.0, 2.0, 2.0, 2) ==
        doctest::Approx(1.0 + std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("warmness constant grows with dimension like d log d") {
  double prev = log_beta(4.0, 4.0, 1.0, 2);
  for (int d = 4; d <= 128; d *= 2) {
    double cur = log_beta(4.0, 4.0, 1.0, d);
    REQUIRE(cur > prev);
    prev = cur;
  }
  double r1 = log_beta(4.0, 4.0, 1.0, 1000) / (1000.0 * std::log(1000.0));
  double r2 = log_beta(4.0, 4.0, 1.0, 10000) / (10000.0 * std::log(10000.0));
  CHECK(std::abs(r1 / r2 - 1.0) < 0.2);
}

TEST_CASE("quadratic envelope samples are gaussian with the right variance") {
  // k2 = 1, alpha = 2 makes f0(r) = r^2, i.e. mu0 = Normal(0, I/2).
  FeasibleStart fs(1.0, 2.0, 2.0, 3);
  RngStream rng(51);
  const int n = 100000;
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(3);
  Eigen::VectorXd sum2 = Eigen::VectorXd::Zero(3);
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd x = fs.sample(rng);
    sum += x;
    sum2 += x.cwiseProduct(x);
  }
  for (int k = 0; k < 3; ++k) {
    double mean = sum[k] / n;
    double var = sum2[k] / n - mean * mean;
    CHECK(std::abs(mean) < 0.01);
    CHECK(var == doctest::Approx(0.5).epsilon(0.02));
  }
}

TEST_CASE("mode shift translates the sampling distribution") {
  Eigen::VectorXd shift(3);
  shift << 1.0, -2.0, 0.5;
  FeasibleStart fs(1.0, 2.0, 2.0, 3, shift);
  RngStream rng(52);
  const int n = 100000;
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(3);
  for (int i = 0; i < n; ++i) sum += fs.sample(rng);
  for (int k = 0; k < 3; ++k) {
    CHECK(std::abs(sum[k] / n - shift[k]) < 0.01);
  }

  Eigen::VectorXd at_shift = shift;
  Eigen::VectorXd away = shift + Eigen::VectorXd::Ones(3);
  CHECK(fs.log_density_unnormalized(at_shift) > fs.log_density_unnormalized(away));
}

TEST_CASE("sampled radii match the tabulated radial law") {
  FeasibleStart fs(1.0, 4.0, 1.0, 1);
  RngStream rng(53);
  const int n = 100000;
  std::vector<double> radii(n);
  for (int i = 0; i < n; ++i) radii[static_cast<std::size_t>(i)] = fs.sample(rng).norm();
  std::sort(radii.begin(), radii.end());
  double ks = 0.0;
  for (int i = 0; i < n; ++i) {
    double c = fs.radial_cdf(radii[static_cast<std::size_t>(i)]);
    ks = std::max(ks, std::abs(c - static_cast<double>(i) / n));
    ks = std::max(ks, std::abs(c - static_cast<double>(i + 1) / n));
  }
  CHECK(ks < 0.01);
}

TEST_CASE("radial cdf is a proper distribution function") {
  FeasibleStart fs(2.0, 3.0, 1.0, 5);
  CHECK(fs.radial_cdf(0.0) == 0.0);
  CHECK(fs.radial_cdf(-1.0) == 0.0);
  CHECK(fs.radial_cdf(fs.r_max()) == 1.0);
  double prev = 0.0;
  for (double r = 0.1; r < fs.r_max(); r += 0.1) {
    double c = fs.radial_cdf(r);
    REQUIRE(c >= prev);
    prev = c;
  }
}

TEST_CASE("envelope dominates every builtin target pointwise") {
  RngStream rng(54);
  const Potential targets[] = {make_pi1(3, 1.0),      make_pi1(3, 0.5),
                               make_pi2(3),           make_radial(3, 2.0),
                               make_radial(3, 3.0),   make_radial(3, 4.0),
                               make_gaussian(3, 1.0), make_gaussian(3, 2.5)};
  for (const Potential& pot : targets) {
    double m_for_fs = pot.m > 0.0 ? pot.m : 1.0;  // m only feeds log_beta
    FeasibleStart fs(pot.k2, pot.alpha, m_for_fs, 3);
    for (int i = 0; i < 200; ++i) {
      Eigen::VectorXd x = 2.0 * rng.normal_vector(3);
      if (x.norm() > 5.0) x *= 5.0 / x.norm();
      REQUIRE(eval_potential(pot, x) <= fs.f0_radial(x.norm()) + 1e-9);
    }
  }
}

TEST_CASE("grid check certifies warmness when the envelope matches exactly") {
  FeasibleStart fs(1.0, 2.0, 2.0, 1);
  Potential pot = make_gaussian(1, 2.0);  // f = r^2 = f0 exactly
  WarmnessReport rep = verify_warmness_grid(fs, pot, -8.0, 8.0, 2001);
  CHECK(rep.ok);
  CHECK(std::abs(rep.max_log_ratio) <= 1e-9);
}

TEST_CASE("grid check certifies warmness for the quartic-plus-quadratic target") {
  Potential pot = make_pi1(1, 1.0);
  FeasibleStart fs(pot.k2, pot.alpha, pot.m, 1);
  WarmnessReport rep = verify_warmness_grid(fs, pot, -8.0, 8.0, 2001);
  CHECK(rep.ok);
  CHECK(rep.max_log_ratio < fs.log_beta());
  CHECK(rep.max_log_ratio > 0.0);  // the envelope is strictly wider, so not a perfect match
}

TEST_CASE("grid check rejects a window that truncates the densities") {
  FeasibleStart fs(1.0, 2.0, 2.0, 1);
  Potential pot = make_gaussian(1, 2.0);
  CHECK_THROWS_AS(verify_warmness_grid(fs, pot, -1.0, 1.0, 2001), std::invalid_argument);
}

TEST_CASE("sampling from a fixed seed is reproducible") {
  FeasibleStart fs(4.0, 4.0, 1.0, 4);
  std::vector<Eigen::VectorXd> a = sample_start(fs, 8, 99);
  std::vector<Eigen::VectorXd> b = sample_start(fs, 8, 99);
  REQUIRE(a.size() == 8);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK((a[i] - b[i]).norm() == 0.0);
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(log_beta(0.0, 2.0, 1.0, 2), std::invalid_argument);
  CHECK_THROWS_AS(log_beta(1.0, 1.5, 1.0, 2), std::invalid_argument);
  CHECK_THROWS_AS(log_beta(1.0, 2.0, 0.0, 2), std::invalid_argument);
  CHECK_THROWS_AS(log_beta(1.0, 2.0, 1.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(FeasibleStart(1.0, 2.0, 1.0, 2, Eigen::VectorXd::Zero(3)),
                  std::invalid_argument);
  FeasibleStart fs(1.0, 2.0, 1.0, 2);
  CHECK_THROWS_AS(fs.log_density_unnormalized(Eigen::VectorXd::Zero(3)),
                  std::invalid_argument);
  CHECK_THROWS_AS(sample_start(fs, 0, 1), std::invalid_argument);
}
