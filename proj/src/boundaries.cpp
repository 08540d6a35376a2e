#include "confseq/boundaries.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "confseq/root_finding.hpp"
#include "confseq/special_functions.hpp"

namespace confseq {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_alpha_l0(double alpha, double l0) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("alpha must lie in (0,1)");
  if (!(l0 >= 1.0)) throw std::domain_error("l0 must be >= 1");
}
}  // namespace

// ---------------------------------------------------------------------------
// Linear boundary

UniformBoundary linear_boundary(const PsiFamily& family, double lambda, double alpha,
                                double l0) {
  check_alpha_l0(alpha, l0);
  if (!(lambda > 0.0 && lambda < family.lambda_max()))
    throw std::domain_error("linear_boundary: lambda outside (0, lambda_max)");
  double intercept = std::log(l0 / alpha) / lambda;
  double slope = psi_eval(family, lambda) / lambda;
  return UniformBoundary(family, alpha, l0, "linear",
                         {{"lambda", lambda}, {"intercept", intercept}, {"slope", slope}},
                         [intercept, slope](double v) { return intercept + slope * v; });
}

// ---------------------------------------------------------------------------
// Stitched boundary

StitchParams StitchParams::polynomial(double eta, double s, double m, double c) {
  StitchParams p;
  p.eta = eta;
  p.s = s;
  p.m = m;
  p.c = c;
  p.h_kind = HKind::polynomial;
  p.validate();
  return p;
}

StitchParams StitchParams::exponential(double eta, double s, double m, double c) {
  StitchParams p;
  p.eta = eta;
  p.s = s;
  p.m = m;
  p.c = c;
  p.h_kind = HKind::exponential;
  p.validate();
  return p;
}

StitchParams StitchParams::table(double eta, std::vector<double> h, double m, double c) {
  StitchParams p;
  p.eta = eta;
  p.m = m;
  p.c = c;
  p.h_kind = HKind::table;
  p.h_table = std::move(h);
  p.validate();
  return p;
}

void StitchParams::validate() const {
  if (!(eta > 1.0)) throw std::domain_error("StitchParams: eta must be > 1");
  if (!(m > 0.0)) throw std::domain_error("StitchParams: m must be > 0");
  if (!(c >= 0.0)) throw std::domain_error("StitchParams: c must be >= 0");
  if (h_kind == HKind::table) {
    if (h_table.empty()) throw std::domain_error("StitchParams: empty h table");
    double sum = 0.0;
    double prev = 0.0;
    for (double v : h_table) {
      if (!(v > 0.0)) throw std::domain_error("StitchParams: h table entries must be > 0");
      if (v < prev) throw std::domain_error("StitchParams: h table must be nondecreasing");
      prev = v;
      sum += 1.0 / v;
    }
    if (sum > 1.0 + 1e-12)
      throw std::domain_error("StitchParams: sum of 1/h(k) over the table exceeds 1");
  } else {
    if (!(s > 1.0)) throw std::domain_error("StitchParams: s must be > 1");
  }
}

double StitchParams::k1() const {
  return (std::pow(eta, 0.25) + std::pow(eta, -0.25)) / std::sqrt(2.0);
}

double StitchParams::k2() const { return (std::sqrt(eta) + 1.0) / 2.0; }

double StitchParams::h_at(double k) const {
  switch (h_kind) {
    case HKind::polynomial:
      return std::pow(k + 1.0, s) * riemann_zeta(s);
    case HKind::exponential:
      return std::pow(eta, s * k) / (1.0 - std::pow(eta, -s));
    case HKind::table: {
      auto idx = static_cast<std::size_t>(std::floor(k));
      if (idx >= h_table.size()) return kInf;
      return h_table[idx];
    }
  }
  return kInf;
}

double stitch_ell(const StitchParams& p, double alpha, double l0, double v) {
  double w = std::max(v, p.m) / p.m;
  double k = std::log(w) / std::log(p.eta);
  return std::log(p.h_at(k)) + std::log(l0 / alpha);
}

UniformBoundary stitched_boundary(const StitchParams& p, double alpha, double l0) {
  p.validate();
  check_alpha_l0(alpha, l0);
  // general m by change of units: S/sqrt(m), V/m, c/sqrt(m) against the
  // unit-time boundary
  double root_m = std::sqrt(p.m);
  double cs = p.c / root_m;
  double k1 = p.k1(), k2 = p.k2();
  StitchParams base = p;
  std::map<std::string, double> params = {{"eta", p.eta}, {"m", p.m}, {"c", p.c}};
  if (p.h_kind != StitchParams::HKind::table) params["s"] = p.s;
  params["h_kind"] = static_cast<double>(p.h_kind);
  return UniformBoundary(
      PsiFamily::gamma(p.c), alpha, l0, "stitched", std::move(params),
      [base, alpha, l0, root_m, cs, k1, k2](double v) {
        double w = std::max(v, base.m) / base.m;
        double k = std::log(w) / std::log(base.eta);
        double ell = std::log(base.h_at(k)) + std::log(l0 / alpha);
        if (!std::isfinite(ell)) return kInf;
        double su = std::sqrt(k1 * k1 * w * ell + k2 * k2 * cs * cs * ell * ell) + k2 * cs * ell;
        return root_m * su;
      });
}

double stitching_tail(const StitchParams& p, double alpha, double v0) {
  p.validate();
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("alpha must lie in (0,1)");
  if (!(v0 >= p.m)) throw std::domain_error("stitching_tail: v0 must be >= m");
  auto k0 = static_cast<long>(std::floor(std::log(v0 / p.m) / std::log(p.eta)));
  switch (p.h_kind) {
    case StitchParams::HKind::exponential:
      // geometric: sum_{k>=k0} (1-eta^{-s}) eta^{-sk} = eta^{-s k0}
      return alpha * std::pow(p.eta, -p.s * static_cast<double>(k0));
    case StitchParams::HKind::polynomial: {
      // sum_{k>=k0} (k+1)^{-s} / zeta(s)
      double tail;
      if (k0 <= 64) {
        double head = 0.0;
        for (long j = 1; j <= k0; ++j) head += std::pow(static_cast<double>(j), -p.s);
        tail = riemann_zeta(p.s) - head;
      } else {
        // partial sum plus integral tail bound
        tail = 0.0;
        long cut = k0 + 100000;
        for (long j = k0 + 1; j <= cut; ++j) tail += std::pow(static_cast<double>(j), -p.s);
        tail += std::pow(static_cast<double>(cut), 1.0 - p.s) / (p.s - 1.0);
      }
      return alpha * tail / riemann_zeta(p.s);
    }
    case StitchParams::HKind::table:
      throw std::domain_error("stitching_tail: unsupported for table-shaped h without a tail");
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// Conjugate mixtures

namespace {

void check_mixture_params(MixtureKind kind, const MixtureParams& p) {
  switch (kind) {
    case MixtureKind::normal_two_sided:
    case MixtureKind::normal_one_sided:
      if (!(p.rho > 0.0)) throw std::domain_error("normal mixture: rho must be > 0");
      break;
    case MixtureKind::beta_binomial_two_sided:
    case MixtureKind::beta_binomial_one_sided:
      if (!(p.g > 0.0 && p.h > 0.0))
        throw std::domain_error("beta-binomial mixture: g,h must be > 0");
      if (!(p.rho > p.g * p.h))
        throw std::domain_error("beta-binomial mixture: rho must exceed g h");
      break;
    case MixtureKind::gamma_exponential:
    case MixtureKind::gamma_poisson:
      if (!(p.c > 0.0)) throw std::domain_error("gamma mixture: c must be > 0");
      if (!(p.rho > 0.0)) throw std::domain_error("gamma mixture: rho must be > 0");
      break;
  }
}

double beta_binomial_log_m(double s, double v, double g, double h, double r, bool one_sided) {
  double gh = g + h;
  double a = (r + v - g * s) / (g * gh);
  double b = (r + v + h * s) / (h * gh);
  if (!(a > 0.0) || !(b > 0.0)) return kInf;
  double a0 = r / (g * gh);
  double b0 = r / (h * gh);
  double log_pre = (v / (g * h)) * std::log(gh) -
                   ((v / h + s) * std::log(g) + (v / g - s) * std::log(h)) / gh;
  double log_ratio;
  if (one_sided) {
    double x = h / gh;
    log_ratio = log_inc_beta(x, a, b) - log_inc_beta(x, a0, b0);
  } else {
    log_ratio = log_beta(a, b) - log_beta(a0, b0);
  }
  return log_pre + log_ratio;
}

}  // namespace

double mixture_log_m(MixtureKind kind, double s, double v, const MixtureParams& p, double l0) {
  if (!(v >= 0.0)) throw std::domain_error("mixture_log_m: v must be >= 0");
  if (!(l0 >= 1.0)) throw std::domain_error("mixture_log_m: l0 must be >= 1");
  check_mixture_params(kind, p);
  switch (kind) {
    case MixtureKind::normal_two_sided:
      return 0.5 * std::log(p.rho / (v + p.rho)) + s * s / (2.0 * (v + p.rho));
    case MixtureKind::normal_one_sided:
      return 0.5 * std::log(4.0 * p.rho / (v + p.rho)) + s * s / (2.0 * (v + p.rho)) +
             log_std_normal_cdf(s / std::sqrt(v + p.rho));
    case MixtureKind::beta_binomial_two_sided:
      return beta_binomial_log_m(s, v, p.g, p.h, p.rho - p.g * p.h, false);
    case MixtureKind::beta_binomial_one_sided:
      return beta_binomial_log_m(s, v, p.g, p.h, p.rho - p.g * p.h, true);
    case MixtureKind::gamma_exponential: {
      double c2 = p.c * p.c;
      double a0 = p.rho / c2;
      double av = (v + p.rho) / c2;
      double x = (p.c * s + v + p.rho) / c2;
      if (!(x > 0.0)) return -kInf;
      double head = a0 * std::log(a0) - std::lgamma(a0) - log_reg_lower_inc_gamma(a0, a0);
      double body = std::lgamma(av) + log_reg_lower_inc_gamma(av, x) - av * std::log(x);
      return head + body + (p.c * s + v) / c2;
    }
    case MixtureKind::gamma_poisson: {
      double c2 = p.c * p.c;
      double a0 = p.rho / c2;
      double as = (p.c * s + v + p.rho) / c2;
      double x = (v + p.rho) / c2;
      if (!(as > 0.0)) return -kInf;
      double head = a0 * std::log(a0) - std::lgamma(a0) - log_reg_upper_inc_gamma(a0, a0);
      double body = std::lgamma(as) + log_reg_upper_inc_gamma(as, x) - as * std::log(x);
      return head + body + v / c2;
    }
  }
  return -kInf;
}

namespace {

PsiFamily mixture_family(MixtureKind kind, const MixtureParams& p) {
  switch (kind) {
    case MixtureKind::normal_two_sided:
    case MixtureKind::normal_one_sided:
      return PsiFamily::normal();
    case MixtureKind::beta_binomial_two_sided:
    case MixtureKind::beta_binomial_one_sided:
      return PsiFamily::bernoulli(p.g, p.h);
    case MixtureKind::gamma_exponential:
      return PsiFamily::exponential(p.c);
    case MixtureKind::gamma_poisson:
      return PsiFamily::poisson(p.c);
  }
  return PsiFamily::normal();
}

const char* mixture_name(MixtureKind kind) {
  switch (kind) {
    case MixtureKind::normal_two_sided: return "normal2";
    case MixtureKind::normal_one_sided: return "normal1";
    case MixtureKind::beta_binomial_two_sided: return "betabinom2";
    case MixtureKind::beta_binomial_one_sided: return "betabinom1";
    case MixtureKind::gamma_exponential: return "gammaexp";
    case MixtureKind::gamma_poisson: return "gammapoisson";
  }
  return "";
}

// root of log m(s, v) = log(l0/alpha) in s
double mixture_root(MixtureKind kind, const MixtureParams& p, double alpha, double l0,
                    double v, const AccuracySpec& acc) {
  double target = std::log(l0 / alpha);
  auto f = [&](double s) { return mixture_log_m(kind, s, v, p, l0) - target; };
  double b_bar = mixture_family(kind, p).b_bar();
  if (std::isfinite(b_bar)) {
    double cap = b_bar * v;
    if (cap == 0.0) return 0.0;
    double fcap = f(cap);
    if (fcap < 0.0) return cap;  // closed endpoint
    return solve_increasing(f, 0.0, cap, f(0.0), fcap, acc, 1e-10);
  }
  double start = std::sqrt(2.0 * v * std::log(l0 / alpha));
  auto [hi, fhi] = expand_upper(f, std::max(start, 1.0));
  return solve_increasing(f, 0.0, hi, f(0.0), fhi, acc, 1e-10);
}

}  // namespace

UniformBoundary mixture_boundary(MixtureKind kind, const MixtureParams& p, double alpha,
                                 double l0, const AccuracySpec& acc) {
  check_alpha_l0(alpha, l0);
  check_mixture_params(kind, p);
  acc.validate();
  std::map<std::string, double> params = {{"rho", p.rho}};
  if (kind == MixtureKind::gamma_exponential || kind == MixtureKind::gamma_poisson)
    params["c"] = p.c;
  if (kind == MixtureKind::beta_binomial_two_sided || kind == MixtureKind::beta_binomial_one_sided) {
    params["g"] = p.g;
    params["h"] = p.h;
  }
  PsiFamily family = mixture_family(kind, p);
  if (kind == MixtureKind::normal_two_sided) {
    double rho = p.rho;
    return UniformBoundary(family, alpha, l0, mixture_name(kind), std::move(params),
                           [rho, alpha, l0](double v) {
                             double vr = v + rho;
                             return std::sqrt(vr * std::log(l0 * l0 * vr / (alpha * alpha * rho)));
                           });
  }
  MixtureParams pc = p;
  return UniformBoundary(family, alpha, l0, mixture_name(kind), std::move(params),
                         [kind, pc, alpha, l0, acc](double v) {
                           return mixture_root(kind, pc, alpha, l0, v, acc);
                         });
}

double one_sided_normal_mixture_bound(double v, double rho, double alpha, double l0) {
  check_alpha_l0(alpha, l0);
  if (!(rho > 0.0)) throw std::domain_error("rho must be > 0");
  double vr = v + rho;
  return std::sqrt(2.0 * vr * std::log(l0 / (2.0 * alpha) * std::sqrt(vr / rho) + 1.0));
}

double tune_rho_for_time(double m, double alpha, double l0) {
  check_alpha_l0(alpha, l0);
  if (!(m > 0.0)) throw std::domain_error("tune_rho_for_time: m must be > 0");
  double x = -alpha * alpha / (std::exp(1.0) * l0 * l0);
  return m / (-lambert_w_m1(x) - 1.0);
}

// ---------------------------------------------------------------------------
// Discrete mixture

DiscreteMixtureParams DiscreteMixtureParams::lil(double s, double lambda_bar, double eta) {
  if (!(s > 1.0)) throw std::domain_error("lil density: s must be > 1");
  DiscreteMixtureParams p;
  p.eta = eta;
  p.lambda_bar = lambda_bar;
  double lb = lambda_bar;
  p.density = [s, lb](double l) {
    return (s - 1.0) / (l * std::pow(std::log(lb * std::exp(1.0) / l), s));
  };
  p.log_density = [s, lb](double l) {
    return std::log(s - 1.0) - std::log(l) - s * std::log(std::log(lb * std::exp(1.0) / l));
  };
  // sum_{lambda_k < l} w_k <= (eta-1)/(sqrt(eta) log eta) * log(lb e/l)^(1-s)
  p.weight_tail_bound = [s, lb, eta](double l) {
    double big_l = std::log(lb * std::exp(1.0) / l);
    return (eta - 1.0) / (std::sqrt(eta) * std::log(eta)) * std::pow(big_l, 1.0 - s);
  };
  return p;
}

DiscreteMixtureParams DiscreteMixtureParams::half_normal(double rho, double lambda_bar,
                                                         double eta) {
  if (!(rho > 0.0)) throw std::domain_error("half-normal density: rho must be > 0");
  DiscreteMixtureParams p;
  p.eta = eta;
  p.lambda_bar = lambda_bar;
  p.density = [rho](double l) { return std::sqrt(2.0 * rho / M_PI) * std::exp(-0.5 * rho * l * l); };
  p.log_density = [rho](double l) { return 0.5 * std::log(2.0 * rho / M_PI) - 0.5 * rho * l * l; };
  // f(0) * lambda * sqrt(eta) dominates the geometric weight tail
  p.weight_tail_bound = [rho, eta](double l) {
    return std::sqrt(2.0 * rho / M_PI) * l * std::sqrt(eta);
  };
  return p;
}

double discrete_mixture_lambda_bar(double c, double m, double alpha) {
  if (!(m > 0.0)) throw std::domain_error("discrete_mixture_lambda_bar: m must be > 0");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("alpha must lie in (0,1)");
  return 1.0 / (c + std::sqrt(m / (2.0 * std::log(1.0 / alpha))));
}

namespace {

struct DiscreteSupport {
  std::vector<double> lambda;  // support points lambda_k
  std::vector<double> log_w;   // log of normalized weights
  double mass = 0.0;           // total normalized mass (<= 1)
};

void validate_discrete(const DiscreteMixtureParams& p, const PsiFamily& family) {
  if (!(p.eta > 1.0)) throw std::domain_error("discrete mixture: eta must be > 1");
  if (!p.density && !p.log_density)
    throw std::domain_error("discrete mixture: missing density");
  if (!(p.lambda_bar > 0.0 && p.lambda_bar < family.lambda_max()))
    throw std::domain_error("discrete mixture: lambda_bar outside (0, lambda_max)");
}

double log_density_at(const DiscreteMixtureParams& p, double l) {
  if (p.log_density) return p.log_density(l);
  double d = p.density(l);
  if (!(d > 0.0)) throw std::domain_error("discrete mixture: density must be positive");
  return std::log(d);
}

double gamma_scale_of(const PsiFamily& family) {
  switch (family.kind()) {
    case PsiKind::poisson:
    case PsiKind::exponential:
    case PsiKind::gamma:
      return std::max(family.scale(), 0.0);
    default:
      return 0.0;
  }
}

// index needed so the supports reach the tuning-rule cutoff
// ceil(log_eta(lambda_bar (c + sqrt(5 v / log(1/alpha)))))
long coverage_index(const DiscreteMixtureParams& p, double c, double alpha, double v) {
  double la = std::log(1.0 / alpha);
  double arg = p.lambda_bar * (c + std::sqrt(5.0 * v / la));
  return static_cast<long>(std::ceil(std::log(std::max(arg, p.eta)) / std::log(p.eta)));
}

// The density is sampled at the support points themselves; the resulting
// weights are divided by an upper bound on their infinite sum, so the
// discretization is a valid (sub-probability) mixing distribution whenever
// the tail bound holds. Shape checks: positive everywhere, nonincreasing on
// the deep tail where the tail bound is applied.
DiscreteSupport build_support(const DiscreteMixtureParams& p, const PsiFamily& family,
                              double alpha, double v_design) {
  double c = gamma_scale_of(family);
  long k_cov = std::max(coverage_index(p, c, alpha, v_design), 8l);
  long limit = k_cov + std::max(p.max_extra_terms, 0);

  DiscreteSupport sup;
  double log_base = std::log(p.lambda_bar * (p.eta - 1.0)) - std::log(p.eta);
  double log_eta = std::log(p.eta);
  double wsum = 0.0;
  double prev_tail_ld = -kInf;
  for (long k = 0; k <= limit; ++k) {
    double lk = p.lambda_bar / std::pow(p.eta, k + 0.5);
    double ld = log_density_at(p, lk);
    if (lk < p.lambda_bar * 1e-3) {
      // lambda shrinks with k, so a nonincreasing density must not drop here
      if (ld < prev_tail_ld - 1e-9)
        throw std::domain_error(
            "discrete mixture: sampled monotonicity check failed on the density tail");
      prev_tail_ld = ld;
    }
    double lw = log_base + ld - static_cast<double>(k) * log_eta;
    sup.lambda.push_back(lk);
    sup.log_w.push_back(lw);
    double w = std::exp(lw);
    wsum += w;
    if (k >= k_cov && w < 1e-17 * wsum) break;
  }
  double tail = 0.0;
  if (p.weight_tail_bound) tail = p.weight_tail_bound(sup.lambda.back());
  if (!(tail >= 0.0)) throw std::domain_error("discrete mixture: negative weight tail bound");
  double total = wsum + tail;
  if (!p.weight_tail_bound && total > 1.0 + 1e-9)
    throw std::domain_error("discrete mixture: discretized weights sum above 1");
  double log_norm = std::log(std::max(total, 1.0));
  for (double& lw : sup.log_w) lw -= log_norm;
  sup.mass = wsum / std::max(total, 1.0);
  return sup;
}

double log_sum_exp_terms(const DiscreteSupport& sup, const PsiFamily& family, double s,
                         double v) {
  double best = -kInf;
  std::vector<double> logs(sup.lambda.size());
  for (std::size_t i = 0; i < sup.lambda.size(); ++i) {
    double l = sup.lambda[i];
    logs[i] = sup.log_w[i] + l * s - psi_eval(family, l) * v;
    best = std::max(best, logs[i]);
  }
  if (!std::isfinite(best)) return -kInf;
  double acc = 0.0;
  for (double lg : logs) acc += std::exp(lg - best);
  return best + std::log(acc);
}

}  // namespace

double discrete_mixture_log_m(const DiscreteMixtureParams& p, const PsiFamily& family,
                              double s, double v, double alpha) {
  validate_discrete(p, family);
  DiscreteSupport sup = build_support(p, family, alpha, std::max(v, 1.0));
  return log_sum_exp_terms(sup, family, s, v);
}

UniformBoundary discrete_mixture_boundary(const DiscreteMixtureParams& p,
                                          const PsiFamily& family, double alpha, double l0,
                                          const AccuracySpec& acc) {
  validate_discrete(p, family);
  check_alpha_l0(alpha, l0);
  acc.validate();
  // supports built once, wide enough for any intrinsic time up to ~1e12;
  // beyond that the truncated sum only makes the boundary conservative
  auto sup = std::make_shared<const DiscreteSupport>(build_support(p, family, alpha, 1e12));
  if (!(sup->mass <= 1.0 + 1e-9))
    throw std::domain_error("discrete mixture: discretized weights sum above 1");
  PsiFamily fam = family;
  auto eval = [sup, fam, alpha, l0, acc](double v) {
    double target = std::log(l0 / alpha);
    auto f = [&](double s) { return log_sum_exp_terms(*sup, fam, s, v) - target; };
    double f0 = f(0.0);
    if (f0 >= 0.0) return 0.0;
    double start = std::sqrt(2.0 * std::max(v, 1e-12) * std::log(l0 / alpha));
    auto [hi, fhi] = expand_upper(f, std::max(start, 1.0));
    return solve_increasing(f, 0.0, hi, f0, fhi, acc, 1e-10);
  };
  return UniformBoundary(family, alpha, l0, "discrete_mixture",
                         {{"eta", p.eta}, {"lambda_bar", p.lambda_bar}}, eval);
}

// ---------------------------------------------------------------------------
// Inverted stitching

namespace {

void check_concave(const std::function<double(double)>& g, double v_max) {
  // sampled necessary condition on 201 log-spaced points
  const int n = 201;
  double prev_v = 0.0, prev_g = 0.0;
  std::vector<double> vs(n), gs(n);
  for (int i = 0; i < n; ++i) {
    vs[i] = std::pow(v_max, static_cast<double>(i) / (n - 1));
    gs[i] = g(vs[i]);
    if (!(gs[i] >= 0.0))
      throw std::domain_error("inverted_stitching: g must be nonnegative");
  }
  (void)prev_v;
  (void)prev_g;
  for (int i = 0; i + 2 < n; i += 2) {
    double vm = 0.5 * (vs[i] + vs[i + 2]);
    double gm = g(vm);
    double chord = 0.5 * (gs[i] + gs[i + 2]);
    double scale = std::max({1.0, std::fabs(gs[i]), std::fabs(gs[i + 2])});
    if (gm < chord - 1e-9 * scale)
      throw std::domain_error("inverted_stitching: sampled midpoint test failed, g not concave");
  }
}

}  // namespace

double inverted_stitching_prob(const std::function<double(double)>& g, double v_max,
                               std::span<const double> eta_grid, double l0) {
  if (!(v_max > 1.0)) throw std::domain_error("inverted_stitching: v_max must be > 1");
  if (!(l0 >= 1.0)) throw std::domain_error("inverted_stitching: l0 must be >= 1");
  if (eta_grid.empty()) throw std::domain_error("inverted_stitching: empty eta grid");
  check_concave(g, v_max);
  double best = kInf;
  for (double eta : eta_grid) {
    if (!(eta > 1.0)) throw std::domain_error("inverted_stitching: eta grid entries must be > 1");
    auto kmax = static_cast<long>(std::ceil(std::log(v_max) / std::log(eta)));
    double sum = 0.0;
    double vk = 1.0;
    double gk = g(1.0);
    for (long k = 0; k <= kmax; ++k) {
      double vk1 = vk * eta;
      double gk1 = g(vk1);
      double rise = gk1 - gk;
      double icpt = eta * gk - gk1;  // (eta - 1) * intercept
      double expo = -2.0 * std::max(rise, 0.0) * std::max(icpt, 0.0) /
                    (vk * (eta - 1.0) * (eta - 1.0));
      sum += std::exp(expo);
      vk = vk1;
      gk = gk1;
    }
    best = std::min(best, sum);
  }
  return std::min(l0 * best, 1.0);
}

UniformBoundary inverted_stitching_boundary(const std::function<double(double)>& g,
                                            double v_max, std::span<const double> eta_grid,
                                            double l0) {
  double prob = inverted_stitching_prob(g, v_max, eta_grid, l0);
  double alpha = std::min(std::max(prob, 1e-300), 1.0 - 1e-12);
  std::function<double(double)> gc = g;
  return UniformBoundary(PsiFamily::normal(), alpha, l0, "inverted_stitching",
                         {{"v_max", v_max}},
                         [gc, v_max](double v) {
                           if (v > v_max) return kInf;
                           return gc(std::max(1.0, v));
                         });
}

std::vector<double> default_eta_grid() {
  std::vector<double> grid(40);
  double lo = std::log(1.1), hi = std::log(6.0);
  for (int i = 0; i < 40; ++i)
    grid[i] = std::exp(lo + (hi - lo) * static_cast<double>(i + 1) / 40.0);
  return grid;
}

}  // namespace confseq
