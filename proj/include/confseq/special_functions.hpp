#pragma once

#include "confseq/accuracy.hpp"

namespace confseq {

// Regularized incomplete gamma functions P(a,x) and Q(a,x) = 1 - P(a,x).
// Series expansion for x < a+1, continued fraction otherwise.
double reg_lower_inc_gamma(double a, double x);
double reg_upper_inc_gamma(double a, double x);
// Log versions, safe for large shape parameters where P or Q underflows.
double log_reg_lower_inc_gamma(double a, double x);
double log_reg_upper_inc_gamma(double a, double x);

// Complete and incomplete Beta. inc_beta is the non-regularized
// B_x(a,b) = int_0^x p^(a-1) (1-p)^(b-1) dp; B_1(a,b) is the complete Beta.
double log_beta(double a, double b);
double reg_inc_beta(double x, double a, double b);
double log_reg_inc_beta(double x, double a, double b);
double inc_beta(double x, double a, double b);
double log_inc_beta(double x, double a, double b);

// Lower branch of the Lambert W function: the solution z <= -1 of z e^z = x,
// defined for x in [-1/e, 0). Halley iteration from the usual
// log(-x) - log(-log(-x)) guess, with a branch-point series start and a
// bisection safeguard.
double lambert_w_m1(double x);

double std_normal_cdf(double x);
double log_std_normal_cdf(double x);

// Riemann zeta for real s > 1, via Euler-Maclaurin with 10 correction terms.
double riemann_zeta(double s);

}  // namespace confseq
