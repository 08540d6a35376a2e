#include "confseq/special_functions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace confseq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// log of P(a,x) by power series; requires 0 < x < a+1.
double log_gamma_series(double a, double x) {
  double ap = a;
  double del = 1.0 / a;
  double sum = del;
  for (int n = 0; n < 1000; ++n) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * 1e-17) break;
  }
  return std::log(sum) + a * std::log(x) - x - std::lgamma(a);
}

// log of Q(a,x) by continued fraction (modified Lentz); requires x >= a+1.
double log_gamma_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 1000; ++i) {
    double an = -static_cast<double>(i) * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  return std::log(h) + a * std::log(x) - x - std::lgamma(a);
}

void check_gamma_args(double a, double x) {
  if (!(a > 0.0)) throw std::domain_error("incomplete gamma: a must be > 0");
  if (!(x >= 0.0)) throw std::domain_error("incomplete gamma: x must be >= 0");
}

// Continued fraction for the regularized incomplete Beta (modified Lentz).
double beta_cf(double a, double b, double x) {
  const double tiny = 1e-300;
  double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 1000; ++m) {
    int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  return h;
}

void check_beta_args(double x, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::domain_error("incomplete beta: a,b must be > 0");
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("incomplete beta: x must be in [0,1]");
}

}  // namespace

double log_reg_lower_inc_gamma(double a, double x) {
  check_gamma_args(a, x);
  if (x == 0.0) return -kInf;
  if (x < a + 1.0) return log_gamma_series(a, x);
  double lq = log_gamma_cf(a, x);
  return std::log1p(-std::exp(lq));
}

double log_reg_upper_inc_gamma(double a, double x) {
  check_gamma_args(a, x);
  if (x == 0.0) return 0.0;
  if (x >= a + 1.0) return log_gamma_cf(a, x);
  double lp = log_gamma_series(a, x);
  return std::log1p(-std::exp(lp));
}

double reg_lower_inc_gamma(double a, double x) {
  return std::exp(log_reg_lower_inc_gamma(a, x));
}

double reg_upper_inc_gamma(double a, double x) {
  return std::exp(log_reg_upper_inc_gamma(a, x));
}

double log_beta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

namespace {
// direct continued-fraction branch of log I_x(a,b)
double log_reg_inc_beta_cf(double x, double a, double b) {
  return a * std::log(x) + b * std::log1p(-x) - std::log(a) - log_beta(a, b) +
         std::log(beta_cf(a, b, x));
}
}  // namespace

double log_reg_inc_beta(double x, double a, double b) {
  check_beta_args(x, a, b);
  if (x == 0.0) return -kInf;
  if (x == 1.0) return 0.0;
  if (x < (a + 1.0) / (a + b + 2.0)) return log_reg_inc_beta_cf(x, a, b);
  return std::log1p(-std::exp(log_reg_inc_beta_cf(1.0 - x, b, a)));
}

double reg_inc_beta(double x, double a, double b) {
  return std::exp(log_reg_inc_beta(x, a, b));
}

double log_inc_beta(double x, double a, double b) {
  return log_reg_inc_beta(x, a, b) + log_beta(a, b);
}

double inc_beta(double x, double a, double b) {
  return std::exp(log_inc_beta(x, a, b));
}

double lambert_w_m1(double x) {
  const double neg_inv_e = -std::exp(-1.0);
  if (!(x >= neg_inv_e && x < 0.0))
    throw std::domain_error("lambert_w_m1: x must lie in [-1/e, 0)");
  if (x == neg_inv_e) return -1.0;

  const double e = std::exp(1.0);
  double z;
  double p2 = 2.0 * (1.0 + e * x);
  double p = std::sqrt(p2);
  if (p < 0.2) {
    // branch-point series
    z = -1.0 - p - p2 / 3.0 - p * p2 * 11.0 / 72.0;
  } else {
    double l1 = std::log(-x);
    z = l1 - std::log(-l1);
  }
  if (z > -1.0) z = -1.0 - 1e-9;

  // bracket [lo, -1]: f(z) = z e^z - x is decreasing on z <= -1,
  // f(-1) < 0 and f -> -x > 0 as z -> -inf
  auto f = [x](double t) { return t * std::exp(t) - x; };
  double hi = -1.0;
  double lo = std::min(z * 2.0, -2.0);
  for (int i = 0; i < 200 && !(f(lo) > 0.0); ++i) lo *= 2.0;

  const double tol = 1e-13 * std::fabs(x);
  for (int it = 0; it < 200; ++it) {
    double ez = std::exp(z);
    double fz = z * ez - x;
    if (std::fabs(fz) <= tol) return z;
    if (fz > 0.0) lo = std::max(lo, z); else hi = std::min(hi, z);
    double fp = ez * (1.0 + z);
    double fpp = ez * (2.0 + z);
    double step_den = fp - 0.5 * fz * fpp / fp;
    double znew = (step_den != 0.0) ? z - fz / step_den : 0.5 * (lo + hi);
    if (!(znew > lo && znew < hi)) znew = 0.5 * (lo + hi);
    if (znew == z) znew = 0.5 * (lo + hi);
    z = znew;
  }
  return z;
}

double std_normal_cdf(double x) {
  return 0.5 * std::erfc(-x * M_SQRT1_2);
}

double log_std_normal_cdf(double x) {
  if (x > -36.0) {
    double v = std_normal_cdf(x);
    if (v > 0.0) return std::log(v);
  }
  // asymptotic tail: Phi(x) ~ phi(x)/(-x) * (1 - 1/x^2 + 3/x^4 - 15/x^6)
  double y = -x;
  double y2 = y * y;
  double corr = 1.0 - 1.0 / y2 + 3.0 / (y2 * y2) - 15.0 / (y2 * y2 * y2);
  return -0.5 * y2 - 0.5 * std::log(2.0 * M_PI) - std::log(y) + std::log(corr);
}

double riemann_zeta(double s) {
  if (!(s > 1.0)) throw std::domain_error("riemann_zeta: requires s > 1");
  const int n = 20;
  double sum = 0.0;
  for (int k = 1; k < n; ++k) sum += std::pow(static_cast<double>(k), -s);
  sum += std::pow(static_cast<double>(n), 1.0 - s) / (s - 1.0);
  sum += 0.5 * std::pow(static_cast<double>(n), -s);
  // Euler-Maclaurin corrections with B_2 .. B_20
  static const double bern[10] = {
      1.0 / 6.0,     -1.0 / 30.0,     1.0 / 42.0,      -1.0 / 30.0,     5.0 / 66.0,
      -691.0 / 2730.0, 7.0 / 6.0,      -3617.0 / 510.0, 43867.0 / 798.0, -174611.0 / 330.0};
  double rising = s;                 // s (s+1) ... (s+2j-2)
  double factorial = 2.0;            // (2j)!
  double npow = std::pow(static_cast<double>(n), -s - 1.0);
  for (int j = 1; j <= 10; ++j) {
    sum += bern[j - 1] / factorial * rising * npow;
    rising *= (s + 2.0 * j - 1.0) * (s + 2.0 * j);
    factorial *= (2.0 * j + 1.0) * (2.0 * j + 2.0);
    npow /= static_cast<double>(n) * static_cast<double>(n);
  }
  return sum;
}

}  // namespace confseq
