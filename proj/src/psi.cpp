#include "confseq/psi.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace confseq {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

PsiFamily PsiFamily::bernoulli(double g, double h) {
  if (!(g > 0.0 && h > 0.0)) throw std::domain_error("PsiFamily::bernoulli: g,h must be > 0");
  return PsiFamily(PsiKind::bernoulli, g, h, 0.0);
}

PsiFamily PsiFamily::normal() { return PsiFamily(PsiKind::normal, 0.0, 0.0, 0.0); }

PsiFamily PsiFamily::poisson(double c) { return PsiFamily(PsiKind::poisson, 0.0, 0.0, c); }

PsiFamily PsiFamily::exponential(double c) { return PsiFamily(PsiKind::exponential, 0.0, 0.0, c); }

PsiFamily PsiFamily::gamma(double c) { return PsiFamily(PsiKind::gamma, 0.0, 0.0, c); }

double PsiFamily::lambda_max() const {
  switch (kind_) {
    case PsiKind::exponential:
    case PsiKind::gamma:
      return c_ > 0.0 ? 1.0 / c_ : kInf;
    default:
      return kInf;
  }
}

double PsiFamily::b_bar() const {
  switch (kind_) {
    case PsiKind::bernoulli:
      return 1.0 / g_;
    case PsiKind::normal:
      return kInf;
    case PsiKind::poisson:
      return c_ < 0.0 ? -1.0 / c_ : kInf;
    case PsiKind::exponential:
      return c_ < 0.0 ? -1.0 / c_ : kInf;
    case PsiKind::gamma:
      return c_ < 0.0 ? -1.0 / (2.0 * c_) : kInf;
  }
  return kInf;
}

std::string PsiFamily::name() const {
  switch (kind_) {
    case PsiKind::bernoulli: return "bernoulli";
    case PsiKind::normal: return "normal";
    case PsiKind::poisson: return "poisson";
    case PsiKind::exponential: return "exponential";
    case PsiKind::gamma: return "gamma";
  }
  return "";
}

double psi_eval(const PsiFamily& family, double lambda) {
  if (!(lambda >= 0.0 && lambda < family.lambda_max()))
    throw std::domain_error("psi_eval: lambda outside [0, lambda_max)");
  double c = family.scale();
  switch (family.kind()) {
    case PsiKind::bernoulli: {
      double g = family.g(), h = family.h();
      // log-sum-exp form of log((g e^{h l} + h e^{-g l}) / (g+h))
      double num = h * lambda + std::log(g + h * std::exp(-(g + h) * lambda));
      return (num - std::log(g + h)) / (g * h);
    }
    case PsiKind::normal:
      return 0.5 * lambda * lambda;
    case PsiKind::poisson: {
      if (c == 0.0) return 0.5 * lambda * lambda;
      double x = c * lambda;
      if (std::fabs(x) < 1e-3) {
        // (e^x - x - 1)/x^2 * lambda^2 by series
        double s = 0.5 + x / 6.0 + x * x / 24.0 + x * x * x / 120.0 + x * x * x * x / 720.0;
        return lambda * lambda * s;
      }
      return (std::expm1(x) - x) / (c * c);
    }
    case PsiKind::exponential: {
      if (c == 0.0) return 0.5 * lambda * lambda;
      double x = c * lambda;
      if (std::fabs(x) < 1e-3) {
        // (-log(1-x) - x)/x^2 * lambda^2 by series
        double s = 0.5 + x / 3.0 + x * x / 4.0 + x * x * x / 5.0 + x * x * x * x / 6.0;
        return lambda * lambda * s;
      }
      return (-std::log1p(-x) - x) / (c * c);
    }
    case PsiKind::gamma: {
      if (c == 0.0) return 0.5 * lambda * lambda;
      return lambda * lambda / (2.0 * (1.0 - c * lambda));
    }
  }
  return 0.0;
}

double psi_derivative(const PsiFamily& family, double lambda) {
  if (!(lambda >= 0.0 && lambda < family.lambda_max()))
    throw std::domain_error("psi_derivative: lambda outside [0, lambda_max)");
  double c = family.scale();
  switch (family.kind()) {
    case PsiKind::bernoulli: {
      double g = family.g(), h = family.h();
      double e = std::exp(-(g + h) * lambda);
      return -std::expm1(-(g + h) * lambda) / (g + h * e);
    }
    case PsiKind::normal:
      return lambda;
    case PsiKind::poisson:
      if (c == 0.0) return lambda;
      return std::expm1(c * lambda) / c;
    case PsiKind::exponential:
      if (c == 0.0) return lambda;
      return lambda / (1.0 - c * lambda);
    case PsiKind::gamma: {
      if (c == 0.0) return lambda;
      double d = 1.0 - c * lambda;
      return lambda * (2.0 - c * lambda) / (2.0 * d * d);
    }
  }
  return 0.0;
}

double psi_g_inverse(double u, double c) {
  if (!(u > 0.0)) throw std::domain_error("psi_g_inverse: u must be > 0");
  return 2.0 / (c + std::sqrt(c * c + 2.0 / u));
}

namespace {

double legendre_bernoulli(double g, double h, double x) {
  // kl form: with y = g h x, p_y = (y+g)/(g+h), p_0 = g/(g+h)
  double y = g * h * x;
  if (y > h) return kInf;
  double p0 = g / (g + h);
  double py = (y + g) / (g + h);
  auto xlogx = [](double p, double q) { return p > 0.0 ? p * std::log(p / q) : 0.0; };
  return (xlogx(py, p0) + xlogx(1.0 - py, 1.0 - p0)) / (g * h);
}

}  // namespace

double legendre(const PsiFamily& family, double x) {
  if (!(x >= 0.0)) throw std::domain_error("legendre: x must be >= 0");
  if (x == 0.0) return 0.0;
  switch (family.kind()) {
    case PsiKind::normal:
      return 0.5 * x * x;
    case PsiKind::bernoulli:
      return legendre_bernoulli(family.g(), family.h(), x);
    default:
      break;
  }
  if (x >= family.b_bar()) return kInf;
  // maximizer solves psi'(lambda) = x; psi' is increasing
  double lmax = family.lambda_max();
  double hi;
  if (std::isfinite(lmax)) {
    hi = lmax * (1.0 - 1e-12);
    if (psi_derivative(family, hi) < x) return kInf;
  } else {
    hi = 1.0;
    int guard = 0;
    while (psi_derivative(family, hi) < x) {
      hi *= 2.0;
      if (++guard > 400) return kInf;
    }
  }
  double lo = 0.0;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (psi_derivative(family, mid) < x) lo = mid; else hi = mid;
    if (hi - lo <= 1e-14 * (1.0 + hi)) break;
  }
  double lstar = 0.5 * (lo + hi);
  return lstar * x - psi_eval(family, lstar);
}

}  // namespace confseq
