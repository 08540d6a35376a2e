#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>

#include "confseq/boundaries.hpp"
#include "confseq/intervals.hpp"

namespace confseq {

// ---------------------------------------------------------------------------
// Streaming state

// One-step-ahead predictor feeding the empirical variance process.
class Predictor {
 public:
  virtual ~Predictor() = default;
  virtual double predict() const = 0;
  virtual void observe(double x) = 0;
  virtual std::unique_ptr<Predictor> clone() const = 0;
};

// Running mean of the previous observations; midpoint of the support before
// any data.
class RunningMeanPredictor : public Predictor {
 public:
  explicit RunningMeanPredictor(double initial) : initial_(initial) {}
  double predict() const override { return n_ ? sum_ / static_cast<double>(n_) : initial_; }
  void observe(double x) override {
    sum_ += x;
    ++n_;
  }
  std::unique_ptr<Predictor> clone() const override {
    return std::make_unique<RunningMeanPredictor>(*this);
  }

 private:
  double initial_;
  double sum_ = 0.0;
  std::int64_t n_ = 0;
};

// Running statistics of a bounded observation stream: count, sum, and the
// accumulated squared prediction errors.
class StreamState {
 public:
  StreamState(double a, double b, std::unique_ptr<Predictor> predictor = nullptr);
  StreamState(const StreamState& other);
  StreamState& operator=(const StreamState& other);

  void update(double x);  // throws when x is outside [a, b]

  std::int64_t t() const { return t_; }
  double sum() const { return sum_; }
  double mean() const { return t_ ? sum_ / static_cast<double>(t_) : 0.0; }
  double v_hat() const { return v_hat_; }
  double a() const { return a_; }
  double b() const { return b_; }

 private:
  double a_, b_;
  std::int64_t t_ = 0;
  double sum_ = 0.0;
  double v_hat_ = 0.0;
  std::unique_ptr<Predictor> predictor_;
};

// ---------------------------------------------------------------------------
// Mean strategies

// Interval mean +- u(V_t)/t for a symmetric pair of boundaries sharing one
// variance process.
CsInterval mean_cs_interval(std::int64_t t, double mean, double v,
                            const UniformBoundary& lower, const UniformBoundary& upper);

// Sub-Gaussian treatment of [a,b]-bounded observations: two-sided normal
// mixture on V_t = (b-a)^2 t / 4.
class HoeffdingCs {
 public:
  HoeffdingCs(double a, double b, double alpha, double rho);
  void observe(double x) { state_.update(x); }
  CsInterval update(double x);
  CsInterval interval() const { return interval_at(alpha_); }
  CsInterval interval_at(double alpha_total) const;
  bool covers(double mu) const { return covers(mu, alpha_); }
  bool covers(double mu, double alpha_total) const;
  const StreamState& state() const { return state_; }

 private:
  double v() const;
  StreamState state_;
  double alpha_, rho_;
};

// Sub-Bernoulli treatment: for each candidate mean mu, the two-sided
// beta-binomial mixture with g = mu - a, h = b - mu and V_t = g h t decides
// membership; interval endpoints come from a 512-point grid refined by
// bisection. rho is tuned per candidate for the intrinsic time g h opt_time.
class BetaBinomialCs {
 public:
  BetaBinomialCs(double a, double b, double alpha, double opt_time);
  // one-sided pair at (alpha_lower, alpha_upper), as used by the
  // exponential-family form
  static BetaBinomialCs one_sided_pair(double a, double b, double alpha_lower,
                                       double alpha_upper, double opt_time);

  void observe(double x) { state_.update(x); }
  CsInterval update(double x);
  CsInterval interval() const;
  bool covers(double mu) const;
  bool covers(double mu, double alpha_total) const;
  const StreamState& state() const { return state_; }

 private:
  bool member(double mu, double a1, double a2) const;
  StreamState state_;
  double alpha_;
  double alpha_lo_ = 0.0, alpha_up_ = 0.0;
  bool one_sided_pair_ = false;
  double opt_time_;
  double rho_over_gh_;  // per-candidate rho = g h * rho_over_gh_
};

// Pointwise Cramer-Chernoff test of a candidate mean; valid at any fixed t,
// not uniformly over time.
class PointwiseBernoulliTest {
 public:
  PointwiseBernoulliTest(double a, double b, double alpha);
  void update(double x);
  bool reject(double mu) const { return reject(mu, alpha_); }
  bool reject(double mu, double alpha) const;
  CsInterval interval() const;  // grid scan of the acceptance region
  const StreamState& state() const { return state_; }

 private:
  StreamState state_;
  double alpha_;
};

// Variance-adaptive strategy: gamma-exponential mixture with scale b - a on
// the accumulated squared prediction errors; two-sided confidence 1 - 2 alpha.
class EmpiricalBernsteinCs {
 public:
  EmpiricalBernsteinCs(double a, double b, double alpha_per_side, double rho,
                       std::unique_ptr<Predictor> predictor = nullptr);
  // closed-form polynomial-stitching variant of the boundary
  static EmpiricalBernsteinCs closed_form(double a, double b, double alpha_per_side,
                                          std::unique_ptr<Predictor> predictor = nullptr);

  void observe(double x) { state_.update(x); }
  CsInterval update(double x);
  CsInterval interval() const { return interval_at(2.0 * alpha_side_); }
  CsInterval interval_at(double alpha_total) const;
  double radius(double alpha_total) const;
  bool covers(double mu) const { return covers(mu, 2.0 * alpha_side_); }
  bool covers(double mu, double alpha_total) const;
  const StreamState& state() const { return state_; }

 private:
  EmpiricalBernsteinCs(double a, double b, double alpha_per_side, double rho, bool closed,
                       std::unique_ptr<Predictor> predictor);
  StreamState state_;
  double alpha_side_, rho_, scale_;
  bool closed_form_ = false;
  StitchParams stitch_;
};

// Normal mixture fed the empirical variance estimate. Diagnostic only: it is
// not a valid confidence sequence and is included as a comparison strategy.
class NaiveSnCs {
 public:
  NaiveSnCs(double a, double b, double alpha, double rho);
  void observe(double x) { state_.update(x); }
  CsInterval update(double x);
  CsInterval interval() const { return interval_at(alpha_); }
  CsInterval interval_at(double alpha_total) const;
  bool covers(double mu) const { return covers(mu, alpha_); }
  bool covers(double mu, double alpha_total) const;
  const StreamState& state() const { return state_; }

 private:
  StreamState state_;
  double alpha_, rho_;
};

// ---------------------------------------------------------------------------
// Treatment-effect stream

// Inverse-probability-weighted estimates of per-unit treatment effects with
// per-arm running-mean outcome predictions (cold start 0.5). Interval covers
// the running average treatment effect at confidence 1 - 2 alpha.
class AteCs {
 public:
  AteCs(double p_min, double alpha_per_side, double rho);

  CsInterval update(int z, double p, double y_obs);
  CsInterval update(int z, double p, double y_obs, double pred0, double pred1);
  CsInterval interval() const;
  bool covers(double ate, double alpha_total) const;
  std::int64_t t() const { return t_; }
  double mean() const { return t_ ? sum_ipw_ / static_cast<double>(t_) : 0.0; }
  double v() const { return v_; }

 private:
  double p_min_, alpha_side_, rho_, scale_;
  std::int64_t t_ = 0;
  double sum_ipw_ = 0.0;
  double v_ = 0.0;
  double arm_sum_[2] = {0.0, 0.0};
  std::int64_t arm_n_[2] = {0, 0};
};

// ---------------------------------------------------------------------------
// Variance stream

// Confidence sequence for the variance of i.i.d. Gaussian observations with
// unknown mean. The scaled centered sample variance is sub-exponential with
// scale 2 on intrinsic time 2t; the lower tail rides a sub-Gaussian boundary.
class VarianceCs {
 public:
  VarianceCs(double alpha_upper, double alpha_lower, double rho_upper, double rho_lower);
  CsInterval update(double x);
  CsInterval interval() const { return interval_at(0.0); }  // construction alphas
  bool covers(double sigma2, double alpha_total) const;
  std::int64_t n() const { return n_; }

 private:
  CsInterval interval_at(double alpha_total) const;  // 0 = use construction alphas
  double alpha_up_, alpha_lo_, rho_up_, rho_lo_;
  std::int64_t n_ = 0;
  double mean_ = 0.0;
  double q_ = 0.0;  // sum of squared deviations from the running mean
};

// ---------------------------------------------------------------------------
// One-parameter exponential family

// Bernoulli instantiation: coincides with the beta-binomial strategy on
// [0,1] with g = mu, h = 1 - mu, built from the one-sided mixture pair.
class BernoulliFamilyCs {
 public:
  BernoulliFamilyCs(double alpha1, double alpha2, double opt_time);
  void observe(double x) { inner_.observe(x); }
  CsInterval update(double x);
  CsInterval interval() const;
  bool covers(double mu) const;
  bool covers(double mu, double alpha_total) const;

 private:
  BetaBinomialCs inner_;
};

// Generic hook: boundary factories (mu, t) -> u_mu(t) and (mu, t) ->
// tilde_u_mu(t) define the set {mu : -tilde_u_mu(t) < sum_T - t mu < u_mu(t)};
// endpoints located by grid scan plus bisection over [omega_lo, omega_hi].
CsInterval expo_family_interval(const std::function<double(double, double)>& upper,
                                const std::function<double(double, double)>& lower,
                                double omega_lo, double omega_hi, std::int64_t t,
                                double sum_T);

}  // namespace confseq
