#include <doctest.h>

#include <cmath>

#include "confseq/special_functions.hpp"
#include "oracles.hpp"

using namespace confseq;

TEST_CASE("regularized lower incomplete gamma") {
  CHECK(reg_lower_inc_gamma(1.0, 2.0) == doctest::Approx(1.0 - std::exp(-2.0)).epsilon(1e-12));
  CHECK(reg_lower_inc_gamma(3.0, 0.0) == 0.0);
  // frozen from the series oracle: erf(sqrt(1/2))
  CHECK(reg_lower_inc_gamma(0.5, 0.5) ==
        doctest::Approx(oracle::reg_lower_inc_gamma_series(0.5, 0.5)).epsilon(1e-12));
  CHECK(reg_lower_inc_gamma(0.5, 0.5) == doctest::Approx(0.6826894921).epsilon(1e-9));

  CHECK_THROWS_AS(reg_lower_inc_gamma(0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(reg_lower_inc_gamma(1.0, -0.5), std::domain_error);
}

TEST_CASE("regularized upper incomplete gamma") {
  CHECK(reg_upper_inc_gamma(1.0, 0.0) == 1.0);
  // closed form (1+x) e^-x for a = 2
  CHECK(reg_upper_inc_gamma(2.0, 2.0) == doctest::Approx(3.0 * std::exp(-2.0)).epsilon(1e-12));
  CHECK(reg_upper_inc_gamma(0.5, 4.0) ==
        doctest::Approx(1.0 - oracle::reg_lower_inc_gamma_series(0.5, 4.0)).epsilon(1e-10));
  CHECK(reg_upper_inc_gamma(0.5, 4.0) == doctest::Approx(0.0046777349).epsilon(1e-7));
}

TEST_CASE("lower + upper = 1 on the grid") {
  for (double a : {0.3, 1.0, 2.0, 7.5})
    for (double x : {0.0, 0.1, 1.0, 10.0, 100.0}) {
      double s = reg_lower_inc_gamma(a, x) + reg_upper_inc_gamma(a, x);
      CHECK(std::fabs(s - 1.0) <= 1e-10);
    }
}

TEST_CASE("kernels match the series oracle across the grid") {
  for (double a : {0.3, 1.0, 2.0, 7.5})
    for (double x : {0.1, 1.0, 10.0, 100.0}) {
      double want = oracle::reg_lower_inc_gamma_series(a, x);
      CHECK(reg_lower_inc_gamma(a, x) == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("incomplete beta") {
  CHECK(inc_beta(1.0, 2.0, 3.0) == doctest::Approx(1.0 / 12.0).epsilon(1e-12));
  CHECK(inc_beta(0.5, 1.0, 1.0) == doctest::Approx(0.5).epsilon(1e-12));
  // quadrature oracle; the closed form is x^2/2 - 2x^3/3 + x^4/4 = 0.029025
  double q = oracle::integrate([](double p) { return p * (1 - p) * (1 - p); }, 0.0, 0.3);
  CHECK(q == doctest::Approx(0.029025).epsilon(1e-10));
  CHECK(inc_beta(0.3, 2.0, 3.0) == doctest::Approx(q).epsilon(1e-10));

  CHECK_THROWS_AS(inc_beta(-0.1, 1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(inc_beta(0.5, 0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(inc_beta(1.5, 1.0, 1.0), std::domain_error);
}

TEST_CASE("incomplete beta reflection") {
  for (double a : {0.4, 1.0, 2.5, 8.0})
    for (double b : {0.7, 1.0, 3.0})
      for (double x : {0.05, 0.3, 0.5, 0.9}) {
        double lhs = inc_beta(x, a, b);
        double rhs = inc_beta(1.0, a, b) - inc_beta(1.0 - x, b, a);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
      }
}

TEST_CASE("incomplete beta against quadrature") {
  for (double a : {0.8, 2.0, 5.5})
    for (double b : {1.0, 3.2})
      for (double x : {0.15, 0.5, 0.85}) {
        double q = oracle::integrate(
            [a, b](double p) { return std::pow(p, a - 1.0) * std::pow(1.0 - p, b - 1.0); },
            1e-15, x);
        CHECK(inc_beta(x, a, b) == doctest::Approx(q).epsilon(1e-9));
      }
}

TEST_CASE("lambert w lower branch") {
  CHECK(lambert_w_m1(-std::exp(-1.0)) == -1.0);
  CHECK(lambert_w_m1(-0.1) == doctest::Approx(oracle::lambert_w_m1_bisect(-0.1)).epsilon(1e-12));
  CHECK(lambert_w_m1(-0.1) == doctest::Approx(-3.5771520639).epsilon(1e-8));
  // -alpha^2/e at alpha = 0.05
  CHECK(lambert_w_m1(-9.19699e-4) == doctest::Approx(-9.2120).epsilon(1e-4));

  CHECK_THROWS_AS(lambert_w_m1(0.0), std::domain_error);
  CHECK_THROWS_AS(lambert_w_m1(-0.4), std::domain_error);
  CHECK_THROWS_AS(lambert_w_m1(0.1), std::domain_error);
}

TEST_CASE("lambert w round trip on 100 log-spaced points") {
  for (int i = 0; i < 100; ++i) {
    double mag = std::pow(10.0, -8.0 + 7.4 * i / 99.0);  // |x| from 1e-8 to ~0.367
    double x = -std::min(mag, std::exp(-1.0) * (1.0 - 1e-12));
    double z = lambert_w_m1(x);
    CHECK(z <= -1.0);
    CHECK(std::fabs(z * std::exp(z) - x) <= 1e-12 * std::fabs(x));
  }
}

TEST_CASE("standard normal cdf") {
  CHECK(std_normal_cdf(0.0) == 0.5);
  for (double x : {-3.0, -1.0, -0.2, 0.7, 2.5}) {
    CHECK(std_normal_cdf(x) == doctest::Approx(oracle::normal_cdf_quadrature(x)).epsilon(1e-12));
  }
  CHECK(log_std_normal_cdf(-40.0) == doctest::Approx(-804.608).epsilon(1e-3));
}

TEST_CASE("riemann zeta") {
  CHECK(riemann_zeta(2.0) == doctest::Approx(M_PI * M_PI / 6.0).epsilon(1e-12));
  CHECK(riemann_zeta(1.4) == doctest::Approx(oracle::zeta_alternating(1.4)).epsilon(1e-12));
  CHECK(riemann_zeta(1.4) == doctest::Approx(3.10555).epsilon(1e-5));
  for (double s : {1.1, 1.7, 3.0, 6.0, 12.0})
    CHECK(riemann_zeta(s) == doctest::Approx(oracle::zeta_alternating(s)).epsilon(1e-12));
  CHECK_THROWS_AS(riemann_zeta(1.0), std::domain_error);
  CHECK_THROWS_AS(riemann_zeta(0.3), std::domain_error);
}

TEST_CASE("accuracy spec invariants") {
  AccuracySpec ok;
  CHECK_NOTHROW(ok.validate());
  AccuracySpec bad1{0.0, 0.0, 100};
  CHECK_THROWS_AS(bad1.validate(), std::domain_error);
  AccuracySpec bad2{1e-9, -1.0, 100};
  CHECK_THROWS_AS(bad2.validate(), std::domain_error);
  AccuracySpec bad3{1e-9, 0.0, 0};
  CHECK_THROWS_AS(bad3.validate(), std::domain_error);
}
