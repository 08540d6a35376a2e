#include "confseq/streams.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "confseq/special_functions.hpp"

namespace confseq {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("alpha must lie in (0,1)");
}

double tuning_divisor(double alpha) {
  // m / rho from the normal-mixture tuning rule
  return -lambert_w_m1(-alpha * alpha / std::exp(1.0)) - 1.0;
}
}  // namespace

double smallest_excluding_alpha(const std::function<bool(double)>& covers, double alpha_floor,
                                double tol, int max_iter) {
  double hi = 1.0 - 1e-9;
  if (covers(hi)) return 1.0;
  if (!covers(alpha_floor)) return alpha_floor;
  double lo = alpha_floor;  // covers at lo, excluded at hi
  for (int it = 0; it < max_iter && hi - lo > tol; ++it) {
    double mid = 0.5 * (lo + hi);
    if (covers(mid)) lo = mid; else hi = mid;
  }
  return hi;
}

// ---------------------------------------------------------------------------
// StreamState

StreamState::StreamState(double a, double b, std::unique_ptr<Predictor> predictor)
    : a_(a), b_(b), predictor_(std::move(predictor)) {
  if (!(a < b)) throw std::domain_error("StreamState: requires a < b");
  if (!predictor_) predictor_ = std::make_unique<RunningMeanPredictor>(0.5 * (a + b));
}

StreamState::StreamState(const StreamState& other)
    : a_(other.a_), b_(other.b_), t_(other.t_), sum_(other.sum_), v_hat_(other.v_hat_),
      predictor_(other.predictor_->clone()) {}

StreamState& StreamState::operator=(const StreamState& other) {
  a_ = other.a_;
  b_ = other.b_;
  t_ = other.t_;
  sum_ = other.sum_;
  v_hat_ = other.v_hat_;
  predictor_ = other.predictor_->clone();
  return *this;
}

void StreamState::update(double x) {
  double slack = 1e-12 * (std::fabs(a_) + std::fabs(b_) + 1.0);
  if (!(x >= a_ - slack && x <= b_ + slack))
    throw std::domain_error("StreamState: observation outside [a, b]");
  double pred = predictor_->predict();
  double err = x - pred;
  v_hat_ += err * err;
  predictor_->observe(x);
  sum_ += x;
  ++t_;
}

// ---------------------------------------------------------------------------
// Mean strategies

CsInterval mean_cs_interval(std::int64_t t, double mean, double v,
                            const UniformBoundary& lower, const UniformBoundary& upper) {
  if (t == 0) return CsInterval{0, -kInf, kInf};
  double td = static_cast<double>(t);
  return CsInterval{t, mean - lower(v) / td, mean + upper(v) / td};
}

HoeffdingCs::HoeffdingCs(double a, double b, double alpha, double rho)
    : state_(a, b), alpha_(alpha), rho_(rho) {
  check_alpha(alpha);
  if (!(rho > 0.0)) throw std::domain_error("HoeffdingCs: rho must be > 0");
}

double HoeffdingCs::v() const {
  double d = state_.b() - state_.a();
  return d * d * static_cast<double>(state_.t()) / 4.0;
}

CsInterval HoeffdingCs::update(double x) {
  state_.update(x);
  return interval();
}

CsInterval HoeffdingCs::interval_at(double alpha_total) const {
  if (state_.t() == 0) return CsInterval{0, -kInf, kInf};
  double vr = v() + rho_;
  double u = std::sqrt(vr * std::log(vr / (alpha_total * alpha_total * rho_)));
  double r = u / static_cast<double>(state_.t());
  return CsInterval{state_.t(), state_.mean() - r, state_.mean() + r};
}

bool HoeffdingCs::covers(double mu, double alpha_total) const {
  if (state_.t() == 0) return true;
  double s = state_.sum() - static_cast<double>(state_.t()) * mu;
  double vr = v() + rho_;
  double u = std::sqrt(vr * std::log(vr / (alpha_total * alpha_total * rho_)));
  return std::fabs(s) < u;
}

// ---------------------------------------------------------------------------
// Beta-binomial strategy

BetaBinomialCs::BetaBinomialCs(double a, double b, double alpha, double opt_time)
    : state_(a, b), alpha_(alpha), opt_time_(opt_time) {
  check_alpha(alpha);
  double w = tuning_divisor(alpha);
  if (!(opt_time > w))
    throw std::domain_error("BetaBinomialCs: opt_time too small for a valid mixture precision");
  rho_over_gh_ = opt_time / w;
}

BetaBinomialCs BetaBinomialCs::one_sided_pair(double a, double b, double alpha_lower,
                                              double alpha_upper, double opt_time) {
  check_alpha(alpha_lower);
  check_alpha(alpha_upper);
  BetaBinomialCs cs(a, b, std::min(alpha_lower + alpha_upper, 0.999), opt_time);
  cs.one_sided_pair_ = true;
  cs.alpha_lo_ = alpha_lower;
  cs.alpha_up_ = alpha_upper;
  return cs;
}

bool BetaBinomialCs::member(double mu, double a1, double a2) const {
  double a = state_.a(), b = state_.b();
  std::int64_t t = state_.t();
  if (t == 0) return mu >= a && mu <= b;
  if (!(mu >= a && mu <= b)) return false;
  double td = static_cast<double>(t);
  double s = state_.sum() - td * mu;
  double edge = 1e-11 * (b - a);
  if (mu - a <= edge) return s <= 1e-9 * td * (b - a);   // all mass at a
  if (b - mu <= edge) return -s <= 1e-9 * td * (b - a);  // all mass at b
  double g = mu - a, h = b - mu;
  double v = g * h * td;
  MixtureParams p{/*rho=*/g * h * rho_over_gh_, /*c=*/0.0, g, h};
  if (one_sided_pair_) {
    if (mixture_log_m(MixtureKind::beta_binomial_one_sided, s, v, p) >= std::log(1.0 / a2))
      return false;
    MixtureParams q{p.rho, 0.0, h, g};
    return mixture_log_m(MixtureKind::beta_binomial_one_sided, -s, v, q) < std::log(1.0 / a1);
  }
  return mixture_log_m(MixtureKind::beta_binomial_two_sided, s, v, p) < std::log(1.0 / a1);
}

bool BetaBinomialCs::covers(double mu) const {
  return one_sided_pair_ ? member(mu, alpha_lo_, alpha_up_) : member(mu, alpha_, alpha_);
}

bool BetaBinomialCs::covers(double mu, double alpha_total) const {
  if (one_sided_pair_) {
    double scale = alpha_total / (alpha_lo_ + alpha_up_);
    return member(mu, alpha_lo_ * scale, alpha_up_ * scale);
  }
  return member(mu, alpha_total, alpha_total);
}

CsInterval BetaBinomialCs::update(double x) {
  state_.update(x);
  return interval();
}

namespace {

// Endpoints of {mu in [a,b] : member(mu)}: 512-point grid, bisection refine.
CsInterval scan_interval(double a, double b, std::int64_t t, double seed,
                         const std::function<bool(double)>& member) {
  if (t == 0) return CsInterval{0, a, b};
  const int n = 512;
  double step = (b - a) / (n + 1);
  int first = -1, last = -1;
  for (int i = 0; i <= n + 1; ++i) {
    if (member(a + step * i)) {
      if (first < 0) first = i;
      last = i;
    }
  }
  double in_lo, in_hi;
  if (first < 0) {
    double s = std::clamp(seed, a + 1e-12 * (b - a), b - 1e-12 * (b - a));
    if (!member(s)) return CsInterval{t, s, s};
    in_lo = in_hi = s;
  } else {
    in_lo = a + step * first;
    in_hi = a + step * last;
  }
  double tol = 1e-10 * (b - a);
  double lower = in_lo;
  if (in_lo > a) {
    double out = std::max(a, in_lo - step);
    if (member(out)) {
      lower = out;
    } else {
      while (in_lo - out > tol) {
        double mid = 0.5 * (out + in_lo);
        if (member(mid)) in_lo = mid; else out = mid;
      }
      lower = in_lo;
    }
  }
  double upper = in_hi;
  if (in_hi < b) {
    double out = std::min(b, in_hi + step);
    if (member(out)) {
      upper = out;
    } else {
      while (out - in_hi > tol) {
        double mid = 0.5 * (out + in_hi);
        if (member(mid)) in_hi = mid; else out = mid;
      }
      upper = in_hi;
    }
  }
  return CsInterval{t, lower, upper};
}

}  // namespace

CsInterval BetaBinomialCs::interval() const {
  return scan_interval(state_.a(), state_.b(), state_.t(), state_.mean(),
                       [this](double mu) { return covers(mu); });
}

// ---------------------------------------------------------------------------
// Pointwise test

PointwiseBernoulliTest::PointwiseBernoulliTest(double a, double b, double alpha)
    : state_(a, b), alpha_(alpha) {
  check_alpha(alpha);
}

void PointwiseBernoulliTest::update(double x) { state_.update(x); }

bool PointwiseBernoulliTest::reject(double mu, double alpha) const {
  double a = state_.a(), b = state_.b();
  std::int64_t t = state_.t();
  if (t == 0) return false;
  if (!(mu >= a && mu <= b)) return true;
  double td = static_cast<double>(t);
  double s = state_.sum() - td * mu;
  double edge = 1e-11 * (b - a);
  if (mu - a <= edge) return s > 1e-9 * td * (b - a);
  if (b - mu <= edge) return -s > 1e-9 * td * (b - a);
  double g = mu - a, h = b - mu;
  double v = g * h * td;
  double stat;
  if (s >= 0.0) {
    stat = v * legendre(PsiFamily::bernoulli(g, h), s / v);
  } else {
    stat = v * legendre(PsiFamily::bernoulli(h, g), -s / v);
  }
  return stat >= std::log(1.0 / alpha);
}

CsInterval PointwiseBernoulliTest::interval() const {
  return scan_interval(state_.a(), state_.b(), state_.t(), state_.mean(),
                       [this](double mu) { return !reject(mu, alpha_); });
}

// ---------------------------------------------------------------------------
// Empirical Bernstein

EmpiricalBernsteinCs::EmpiricalBernsteinCs(double a, double b, double alpha_per_side,
                                           double rho, std::unique_ptr<Predictor> predictor)
    : EmpiricalBernsteinCs(a, b, alpha_per_side, rho, false, std::move(predictor)) {}

EmpiricalBernsteinCs EmpiricalBernsteinCs::closed_form(double a, double b,
                                                       double alpha_per_side,
                                                       std::unique_ptr<Predictor> predictor) {
  return EmpiricalBernsteinCs(a, b, alpha_per_side, 1.0, true, std::move(predictor));
}

EmpiricalBernsteinCs::EmpiricalBernsteinCs(double a, double b, double alpha_per_side,
                                           double rho, bool closed,
                                           std::unique_ptr<Predictor> predictor)
    : state_(a, b, std::move(predictor)), alpha_side_(alpha_per_side), rho_(rho),
      scale_(b - a), closed_form_(closed),
      stitch_(StitchParams::polynomial(2.0, 1.4, 1.0, b - a)) {
  check_alpha(alpha_per_side);
  if (!(rho > 0.0)) throw std::domain_error("EmpiricalBernsteinCs: rho must be > 0");
}

double EmpiricalBernsteinCs::radius(double alpha_total) const {
  if (state_.t() == 0) return kInf;
  double a_side = 0.5 * alpha_total;
  double u;
  if (closed_form_) {
    double v = std::max(state_.v_hat(), stitch_.m);
    double ell = stitch_ell(stitch_, a_side, 1.0, v);
    u = stitch_.k1() * std::sqrt(v * ell) + 2.0 * scale_ * stitch_.k2() * ell;
  } else {
    MixtureParams p{rho_, scale_, 0.0, 0.0};
    UniformBoundary bd = mixture_boundary(MixtureKind::gamma_exponential, p, a_side);
    u = bd(state_.v_hat());
  }
  return u / static_cast<double>(state_.t());
}

CsInterval EmpiricalBernsteinCs::update(double x) {
  state_.update(x);
  return interval();
}

CsInterval EmpiricalBernsteinCs::interval_at(double alpha_total) const {
  if (state_.t() == 0) return CsInterval{0, -kInf, kInf};
  double r = radius(alpha_total);
  return CsInterval{state_.t(), state_.mean() - r, state_.mean() + r};
}

bool EmpiricalBernsteinCs::covers(double mu, double alpha_total) const {
  if (state_.t() == 0) return true;
  double s = std::fabs(state_.sum() - static_cast<double>(state_.t()) * mu);
  double a_side = 0.5 * alpha_total;
  if (closed_form_) {
    return s < radius(alpha_total) * static_cast<double>(state_.t());
  }
  MixtureParams p{rho_, scale_, 0.0, 0.0};
  return mixture_log_m(MixtureKind::gamma_exponential, s, state_.v_hat(), p) <
         std::log(1.0 / a_side);
}

// ---------------------------------------------------------------------------
// Naive self-normalized strategy

NaiveSnCs::NaiveSnCs(double a, double b, double alpha, double rho)
    : state_(a, b), alpha_(alpha), rho_(rho) {
  check_alpha(alpha);
  if (!(rho > 0.0)) throw std::domain_error("NaiveSnCs: rho must be > 0");
}

CsInterval NaiveSnCs::update(double x) {
  state_.update(x);
  return interval();
}

CsInterval NaiveSnCs::interval_at(double alpha_total) const {
  if (state_.t() == 0) return CsInterval{0, -kInf, kInf};
  double vr = state_.v_hat() + rho_;
  double u = std::sqrt(vr * std::log(vr / (alpha_total * alpha_total * rho_)));
  double r = u / static_cast<double>(state_.t());
  return CsInterval{state_.t(), state_.mean() - r, state_.mean() + r};
}

bool NaiveSnCs::covers(double mu, double alpha_total) const {
  if (state_.t() == 0) return true;
  double s = std::fabs(state_.sum() - static_cast<double>(state_.t()) * mu);
  double vr = state_.v_hat() + rho_;
  return s < std::sqrt(vr * std::log(vr / (alpha_total * alpha_total * rho_)));
}

// ---------------------------------------------------------------------------
// Treatment effect

AteCs::AteCs(double p_min, double alpha_per_side, double rho)
    : p_min_(p_min), alpha_side_(alpha_per_side), rho_(rho), scale_(2.0 / p_min) {
  check_alpha(alpha_per_side);
  if (!(p_min > 0.0 && p_min <= 0.5)) throw std::domain_error("AteCs: p_min must lie in (0, 1/2]");
  if (!(rho > 0.0)) throw std::domain_error("AteCs: rho must be > 0");
}

CsInterval AteCs::update(int z, double p, double y_obs) {
  double pred0 = arm_n_[0] ? arm_sum_[0] / static_cast<double>(arm_n_[0]) : 0.5;
  double pred1 = arm_n_[1] ? arm_sum_[1] / static_cast<double>(arm_n_[1]) : 0.5;
  return update(z, p, y_obs, pred0, pred1);
}

CsInterval AteCs::update(int z, double p, double y_obs, double pred0, double pred1) {
  if (z != 0 && z != 1) throw std::domain_error("AteCs: z must be 0 or 1");
  if (!(p >= p_min_ && p <= 1.0 - p_min_))
    throw std::domain_error("AteCs: treatment probability outside [p_min, 1-p_min]");
  if (!(y_obs >= 0.0 && y_obs <= 1.0)) throw std::domain_error("AteCs: y_obs must lie in [0,1]");
  if (!(pred0 >= 0.0 && pred0 <= 1.0 && pred1 >= 0.0 && pred1 <= 1.0))
    throw std::domain_error("AteCs: predictions must lie in [0,1]");
  double pred_z = z ? pred1 : pred0;
  double w = (static_cast<double>(z) - p) / (p * (1.0 - p));
  double x = (pred1 - pred0) + w * (y_obs - pred_z);
  sum_ipw_ += x;
  v_ += w * w * (y_obs - pred_z) * (y_obs - pred_z);
  arm_sum_[z] += y_obs;
  ++arm_n_[z];
  ++t_;
  return interval();
}

CsInterval AteCs::interval() const {
  if (t_ == 0) return CsInterval{0, -kInf, kInf};
  MixtureParams p{rho_, scale_, 0.0, 0.0};
  UniformBoundary bd = mixture_boundary(MixtureKind::gamma_exponential, p, alpha_side_);
  double r = bd(v_) / static_cast<double>(t_);
  return CsInterval{t_, mean() - r, mean() + r};
}

bool AteCs::covers(double ate, double alpha_total) const {
  if (t_ == 0) return true;
  double s = std::fabs(sum_ipw_ - static_cast<double>(t_) * ate);
  MixtureParams p{rho_, scale_, 0.0, 0.0};
  return mixture_log_m(MixtureKind::gamma_exponential, s, v_, p) <
         std::log(2.0 / alpha_total);
}

// ---------------------------------------------------------------------------
// Variance

VarianceCs::VarianceCs(double alpha_upper, double alpha_lower, double rho_upper,
                       double rho_lower)
    : alpha_up_(alpha_upper), alpha_lo_(alpha_lower), rho_up_(rho_upper), rho_lo_(rho_lower) {
  check_alpha(alpha_upper);
  check_alpha(alpha_lower);
  if (!(rho_upper > 0.0 && rho_lower > 0.0)) throw std::domain_error("VarianceCs: rho must be > 0");
}

CsInterval VarianceCs::update(double x) {
  ++n_;
  double delta = x - mean_;
  mean_ += delta / static_cast<double>(n_);
  q_ += delta * (x - mean_);
  return interval();
}

CsInterval VarianceCs::interval_at(double alpha_total) const {
  std::int64_t t = n_ - 1;
  if (t < 1) return CsInterval{t, 0.0, kInf};
  double au = alpha_up_, al = alpha_lo_;
  if (alpha_total > 0.0) {
    double scale = alpha_total / (alpha_up_ + alpha_lo_);
    au *= scale;
    al *= scale;
  }
  double td = static_cast<double>(t);
  double v = 2.0 * td;
  MixtureParams up{rho_up_, 2.0, 0.0, 0.0};
  double u_up = mixture_boundary(MixtureKind::gamma_exponential, up, au)(v);
  // lower deviations: sub-Gaussian route, one-sided normal mixture
  MixtureParams lo{rho_lo_, 0.0, 0.0, 0.0};
  double u_lo = mixture_boundary(MixtureKind::normal_one_sided, lo, al)(v);
  double lower = q_ / (td + u_up);
  double upper = td > u_lo ? q_ / (td - u_lo) : kInf;
  return CsInterval{t, lower, upper};
}

bool VarianceCs::covers(double sigma2, double alpha_total) const {
  CsInterval ci = interval_at(alpha_total);
  return ci.contains(sigma2);
}

// ---------------------------------------------------------------------------
// Exponential family

BernoulliFamilyCs::BernoulliFamilyCs(double alpha1, double alpha2, double opt_time)
    : inner_(BetaBinomialCs::one_sided_pair(0.0, 1.0, alpha2, alpha1, opt_time)) {}

CsInterval BernoulliFamilyCs::update(double x) { return inner_.update(x); }

CsInterval BernoulliFamilyCs::interval() const { return inner_.interval(); }

bool BernoulliFamilyCs::covers(double mu) const { return inner_.covers(mu); }

bool BernoulliFamilyCs::covers(double mu, double alpha_total) const {
  return inner_.covers(mu, alpha_total);
}

CsInterval expo_family_interval(const std::function<double(double, double)>& upper,
                                const std::function<double(double, double)>& lower,
                                double omega_lo, double omega_hi, std::int64_t t,
                                double sum_T) {
  double td = static_cast<double>(t);
  auto member = [&](double mu) {
    if (t == 0) return true;
    double s = sum_T - td * mu;
    return -lower(mu, td) < s && s < upper(mu, td);
  };
  double seed = t ? sum_T / td : 0.5 * (omega_lo + omega_hi);
  return scan_interval(omega_lo, omega_hi, t, seed, member);
}

}  // namespace confseq
