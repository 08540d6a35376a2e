#pragma once

// Brute-force reference implementations used only by the tests. These stay
// independent of the library's evaluation paths: plain series, adaptive
// quadrature, golden-section search and bisection.

#include <cmath>
#include <functional>
#include <stdexcept>

namespace oracle {

// lower incomplete gamma by the power series x^a e^-x sum x^k / Gamma(a+k+1)
inline double reg_lower_inc_gamma_series(double a, double x) {
  if (x == 0.0) return 0.0;
  double sum = 0.0;
  double log_term = a * std::log(x) - x - std::lgamma(a + 1.0);
  for (int k = 0; k < 10000; ++k) {
    double t = std::exp(log_term);
    sum += t;
    if (t < sum * 1e-17 && k > 4) break;
    log_term += std::log(x) - std::log(a + k + 1.0);
  }
  return sum;
}

inline double simpson_rec(const std::function<double(double)>& f, double a, double b,
                          double fa, double fm, double fb, double whole, double eps,
                          int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::fabs(left + right - whole) <= 15.0 * eps)
    return left + right + (left + right - whole) / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, eps / 2.0, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, eps / 2.0, depth - 1);
}

// adaptive Simpson quadrature
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double eps = 1e-12) {
  double m = 0.5 * (a + b);
  double fa = f(a), fm = f(m), fb = f(b);
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, a, b, fa, fm, fb, whole, eps, 60);
}

// golden-section maximization of a concave function on [lo, hi]
inline double golden_max(const std::function<double(double)>& f, double lo, double hi,
                         int iters = 200) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < iters; ++i) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = f(x1);
    }
  }
  return std::max(f1, f2);
}

// lower-branch Lambert W by pure bisection on z e^z = x over z <= -1
inline double lambert_w_m1_bisect(double x) {
  if (!(x >= -std::exp(-1.0) && x < 0.0)) throw std::domain_error("oracle lambert: domain");
  auto f = [x](double z) { return z * std::exp(z) - x; };
  double hi = -1.0;
  double lo = -2.0;
  while (!(f(lo) > 0.0)) lo *= 2.0;
  for (int i = 0; i < 400; ++i) {
    double mid = 0.5 * (lo + hi);
    if (f(mid) > 0.0) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

// zeta via the alternating series with binomial (Cohen-Rodriguez
// Villegas-Zagier) acceleration
inline double zeta_alternating(double s) {
  const int n = 40;
  double d = std::pow(3.0 + std::sqrt(8.0), n);
  d = 0.5 * (d + 1.0 / d);
  double b = -1.0, c = -d, sum = 0.0;
  for (int k = 0; k < n; ++k) {
    c = b - c;
    sum += c * std::pow(static_cast<double>(k + 1), -s);
    b *= 2.0 * (k + n) * (k - n) / ((2.0 * k + 1.0) * (k + 1.0));
  }
  double eta = sum / d;
  return eta / (1.0 - std::pow(2.0, 1.0 - s));
}

// standard normal CDF by quadrature of the density
inline double normal_cdf_quadrature(double x) {
  if (x < 0.0) return 1.0 - normal_cdf_quadrature(-x);
  auto dens = [](double t) { return std::exp(-0.5 * t * t) / std::sqrt(2.0 * M_PI); };
  return 0.5 + integrate(dens, 0.0, x, 1e-14);
}

}  // namespace oracle
