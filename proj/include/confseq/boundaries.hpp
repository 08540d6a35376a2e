#pragma once

#include <functional>
#include <span>
#include <vector>

#include "confseq/accuracy.hpp"
#include "confseq/boundary.hpp"
#include "confseq/psi.hpp"

namespace confseq {

// ---------------------------------------------------------------------------
// Linear boundary

// u(v) = log(l0/alpha)/lambda + (psi(lambda)/lambda) v for any
// lambda in (0, lambda_max).
UniformBoundary linear_boundary(const PsiFamily& family, double lambda, double alpha,
                                double l0 = 1.0);

// ---------------------------------------------------------------------------
// Stitched boundary

// Error-spending shape h over epochs: h(k) = (k+1)^s zeta(s) (polynomial),
// h(k) = eta^{sk} / (1 - eta^{-s}) (exponential), or a user table (treated
// as a step function over epochs; infinite beyond the last entry).
struct StitchParams {
  enum class HKind { polynomial, exponential, table };

  double eta = 2.0;    // epoch spacing, > 1
  double m = 1.0;      // intrinsic time where the boundary becomes nontrivial
  double c = 0.0;      // gamma scale, >= 0
  HKind h_kind = HKind::polynomial;
  double s = 1.4;      // shape exponent, > 1 (polynomial/exponential)
  std::vector<double> h_table;

  static StitchParams polynomial(double eta, double s, double m, double c);
  static StitchParams exponential(double eta, double s, double m, double c);
  static StitchParams table(double eta, std::vector<double> h, double m, double c);

  void validate() const;
  double k1() const;
  double k2() const;
  // h evaluated at real epoch index k >= 0
  double h_at(double k) const;
};

UniformBoundary stitched_boundary(const StitchParams& p, double alpha, double l0 = 1.0);

// The epoch log term ell(v) = log h(log_eta(v/m)) + log(l0/alpha), evaluated
// at v >= m. Exposed for the closed-form variants built on top of it.
double stitch_ell(const StitchParams& p, double alpha, double l0, double v);

// Probability that the stitched boundary is ever crossed at intrinsic time
// v >= v0: alpha * sum_{k >= floor(log_eta(v0/m))} 1/h(k). Closed form for
// the built-in shapes; unsupported for table shapes.
double stitching_tail(const StitchParams& p, double alpha, double v0);

// ---------------------------------------------------------------------------
// Conjugate mixtures

enum class MixtureKind {
  normal_two_sided,
  normal_one_sided,
  beta_binomial_two_sided,
  beta_binomial_one_sided,
  gamma_exponential,
  gamma_poisson,
};

struct MixtureParams {
  double rho = 1.0;  // mixture precision, > 0 (and > g h for beta-binomial)
  double c = 1.0;    // scale for the gamma mixtures, > 0
  double g = 0.0;    // Bernoulli range parameters
  double h = 0.0;
};

// log of the mixture mass m(s, v), evaluated entirely in log space.
double mixture_log_m(MixtureKind kind, double s, double v, const MixtureParams& p,
                     double l0 = 1.0);

// Boundary u(v) solving m(u(v), v) = l0/alpha. Closed form for the two-sided
// normal mixture; bracketed root-finding otherwise. When the family's slope
// cap b_bar is finite (beta-binomial) and m(b_bar v, v) stays below l0/alpha,
// the closed endpoint b_bar v is returned.
UniformBoundary mixture_boundary(MixtureKind kind, const MixtureParams& p, double alpha,
                                 double l0 = 1.0, const AccuracySpec& acc = {});

// Closed-form upper bound on the one-sided normal mixture boundary:
// sqrt(2 (v+rho) log(l0/(2 alpha) sqrt((v+rho)/rho) + 1)).
double one_sided_normal_mixture_bound(double v, double rho, double alpha, double l0 = 1.0);

// rho minimizing u(v)/sqrt(v) of the two-sided normal mixture at v = m:
// rho = m / (-W_{-1}(-alpha^2/(e l0^2)) - 1).
double tune_rho_for_time(double m, double alpha, double l0 = 1.0);

// ---------------------------------------------------------------------------
// Discrete mixture

// Geometric discretization of a mixing density on (0, lambda_bar]: supports
// lambda_k = lambda_bar / eta^(k+1/2) with weights proportional to
// lambda_bar (eta-1) f(lambda_k) / eta^(k+1), normalized by an upper bound
// on their total so the discrete mixture stays a sub-probability.
struct DiscreteMixtureParams {
  std::function<double(double)> density;  // positive on (0, lambda_bar]
  // log of the density; set by the built-ins and preferred when present,
  // since thin-tailed densities underflow in plain evaluation
  std::function<double(double)> log_density;
  // upper bound on the sum of unnormalized weights at support points below
  // a given lambda; set by the built-ins, used to close the normalization
  std::function<double(double)> weight_tail_bound;
  double eta = 1.1;                       // support spacing, > 1
  double lambda_bar = 1.0;                // top support point, in (0, lambda_max)
  // decay terms kept past the intrinsic-time coverage index
  int max_extra_terms = 512;

  // f(l) = (s-1) / (l log^s(lambda_bar e / l)) on (0, lambda_bar], the
  // iterated-logarithm-rate mixture shape.
  static DiscreteMixtureParams lil(double s, double lambda_bar, double eta = 1.1);
  // half-normal with precision rho
  static DiscreteMixtureParams half_normal(double rho, double lambda_bar, double eta = 1.05);
};

// Default top support point [c + sqrt(m / (2 log(1/alpha)))]^{-1} for a
// boundary meant to be tight from intrinsic time m onward.
double discrete_mixture_lambda_bar(double c, double m, double alpha);

UniformBoundary discrete_mixture_boundary(const DiscreteMixtureParams& p,
                                          const PsiFamily& family, double alpha,
                                          double l0 = 1.0, const AccuracySpec& acc = {});

// log of the truncated discrete mixture mass at (s, v).
double discrete_mixture_log_m(const DiscreteMixtureParams& p, const PsiFamily& family,
                              double s, double v, double alpha);

// ---------------------------------------------------------------------------
// Inverted stitching

// Upper bound on the probability that a sub-Gaussian process ever crosses a
// nonnegative, strictly concave g over 1 <= v <= v_max: the minimum over the
// eta grid of the epoch sum, clipped to [0, 1]. Concavity is validated by a
// sampled midpoint check.
double inverted_stitching_prob(const std::function<double(double)>& g, double v_max,
                               std::span<const double> eta_grid, double l0 = 1.0);

// The boundary g(1 v v) for v <= v_max and +inf beyond, carrying the computed
// crossing bound as its alpha.
UniformBoundary inverted_stitching_boundary(const std::function<double(double)>& g,
                                            double v_max, std::span<const double> eta_grid,
                                            double l0 = 1.0);

// 40 log-spaced values in (1.1, 6].
std::vector<double> default_eta_grid();

}  // namespace confseq
