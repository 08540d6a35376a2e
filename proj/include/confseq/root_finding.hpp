#pragma once

#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "confseq/accuracy.hpp"

namespace confseq {

// Solves f(s) = 0 for nondecreasing continuous f with f(lo) <= 0 <= f(hi).
// Bracketed bisection refined by secant steps; converges when the residual
// drops below resid_tol or the bracket shrinks below acc tolerances.
template <class F>
double solve_increasing(F&& f, double lo, double hi, double flo, double fhi,
                        const AccuracySpec& acc = {}, double resid_tol = 1e-10) {
  acc.validate();
  if (flo > 0.0 || fhi < 0.0) {
    std::ostringstream msg;
    msg << "solve_increasing: root not bracketed on [" << lo << ", " << hi
        << "], f = [" << flo << ", " << fhi << "]";
    throw std::runtime_error(msg.str());
  }
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  double s = 0.5 * (lo + hi);
  for (int it = 0; it < acc.max_iter; ++it) {
    // secant proposal, bisection fallback
    double cand = 0.5 * (lo + hi);
    if (std::isfinite(flo) && std::isfinite(fhi) && fhi > flo) {
      double sec = lo - flo * (hi - lo) / (fhi - flo);
      double margin = 0.01 * (hi - lo);
      if (sec > lo + margin && sec < hi - margin) cand = sec;
    }
    s = cand;
    double fs = f(s);
    if (std::fabs(fs) <= resid_tol) return s;
    if (fs < 0.0) {
      lo = s;
      flo = fs;
    } else {
      hi = s;
      fhi = fs;
    }
    if (hi - lo <= acc.rel_tol * std::fabs(s) + acc.abs_tol) return 0.5 * (lo + hi);
  }
  std::ostringstream msg;
  msg << "solve_increasing: no convergence after " << acc.max_iter
      << " iterations; bracket [" << lo << ", " << hi << "], f = [" << flo << ", " << fhi << "]";
  throw std::runtime_error(msg.str());
}

template <class F>
double solve_increasing(F&& f, double lo, double hi, const AccuracySpec& acc = {},
                        double resid_tol = 1e-10) {
  return solve_increasing(f, lo, hi, f(lo), f(hi), acc, resid_tol);
}

// Doubles `hi` until f(hi) >= 0 (f nondecreasing, f(lo) <= 0). Returns the
// expanded endpoint and its value.
template <class F>
std::pair<double, double> expand_upper(F&& f, double hi, int max_doublings = 200) {
  if (!(hi > 0.0)) hi = 1.0;
  double fhi = f(hi);
  for (int i = 0; i < max_doublings && !(fhi >= 0.0); ++i) {
    hi *= 2.0;
    fhi = f(hi);
  }
  if (!(fhi >= 0.0)) {
    std::ostringstream msg;
    msg << "expand_upper: no sign change found up to " << hi << " (f = " << fhi << ")";
    throw std::runtime_error(msg.str());
  }
  return {hi, fhi};
}

}  // namespace confseq
