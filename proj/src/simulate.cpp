#include "confseq/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <memory>
#include <exception>
#include <limits>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "confseq/boundaries.hpp"
#include "confseq/matrix.hpp"
#include "confseq/rng.hpp"
#include "confseq/special_functions.hpp"
#include "confseq/streams.hpp"

namespace confseq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<std::int64_t> log_grid(std::int64_t horizon, int points) {
  std::vector<std::int64_t> ts;
  for (int i = 0; i < points; ++i) {
    double f = points > 1 ? static_cast<double>(i) / (points - 1) : 1.0;
    auto t = static_cast<std::int64_t>(std::llround(std::pow(static_cast<double>(horizon), f)));
    t = std::clamp<std::int64_t>(t, 1, horizon);
    if (ts.empty() || t > ts.back()) ts.push_back(t);
  }
  return ts;
}

double inv_std_normal_cdf(double q) {
  double lo = -10.0, hi = 10.0;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    if (std_normal_cdf(mid) < q) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

struct LawInfo {
  double a, b;      // support (bounded laws)
  double mean;
  double variance;
};

LawInfo mean_law_info(const Scenario& sc) {
  switch (sc.law) {
    case DataLaw::rademacher:
      return {-1.0, 1.0, 0.0, 1.0};
    case DataLaw::bernoulli:
      return {0.0, 1.0, sc.p, sc.p * (1.0 - sc.p)};
    case DataLaw::three_point: {
      double p1 = 0.495, v1 = -1.408, v2 = 1.0, p3 = 0.01, v3 = 20.0;
      double mean = p1 * (v1 + v2) + p3 * v3;
      double ex2 = p1 * (v1 * v1 + v2 * v2) + p3 * v3 * v3;
      return {v1, v3, mean, ex2 - mean * mean};
    }
    default:
      throw std::invalid_argument("not a bounded mean law");
  }
}

double draw(DataLaw law, double p, Rng& rng) {
  switch (law) {
    case DataLaw::rademacher:
      return rng.rademacher();
    case DataLaw::bernoulli:
      return rng.bernoulli(p) ? 1.0 : 0.0;
    case DataLaw::three_point: {
      double u = rng.uniform();
      if (u < 0.495) return -1.408;
      if (u < 0.99) return 1.0;
      return 20.0;
    }
    default:
      throw std::invalid_argument("not a bounded mean law");
  }
}

// ---------------------------------------------------------------------------
// Mean-strategy adapters

class MeanRunner {
 public:
  virtual ~MeanRunner() = default;
  virtual void observe(double x) = 0;
  virtual bool covers_truth() = 0;
  virtual double width() = 0;  // clipped to the support
};

double clipped_width(const CsInterval& ci, double a, double b) {
  double lo = std::max(ci.lower, a), hi = std::min(ci.upper, b);
  return std::max(hi - lo, 0.0);
}

class HoeffdingRunner : public MeanRunner {
 public:
  HoeffdingRunner(const LawInfo& law, const Scenario& sc)
      : law_(law),
        cs_(law.a, law.b, sc.alpha,
            tune_rho_for_time((law.b - law.a) * (law.b - law.a) * sc.opt_time / 4.0, sc.alpha)) {}
  void observe(double x) override { cs_.observe(x); }
  bool covers_truth() override { return cs_.covers(law_.mean); }
  double width() override { return clipped_width(cs_.interval(), law_.a, law_.b); }

 private:
  LawInfo law_;
  HoeffdingCs cs_;
};

class BetaBinomialRunner : public MeanRunner {
 public:
  BetaBinomialRunner(const LawInfo& law, const Scenario& sc)
      : law_(law), cs_(law.a, law.b, sc.alpha, sc.opt_time) {}
  void observe(double x) override { cs_.observe(x); }
  bool covers_truth() override { return cs_.covers(law_.mean); }
  double width() override { return clipped_width(cs_.interval(), law_.a, law_.b); }

 private:
  LawInfo law_;
  BetaBinomialCs cs_;
};

class EmpiricalBernsteinRunner : public MeanRunner {
 public:
  EmpiricalBernsteinRunner(const LawInfo& law, const Scenario& sc)
      : law_(law),
        cs_(law.a, law.b, sc.alpha / 2.0,
            tune_rho_for_time(std::max(law.variance, 1e-6) * sc.opt_time, sc.alpha)) {}
  void observe(double x) override { cs_.observe(x); }
  bool covers_truth() override { return cs_.covers(law_.mean); }
  double width() override { return clipped_width(cs_.interval(), law_.a, law_.b); }

 private:
  LawInfo law_;
  EmpiricalBernsteinCs cs_;
};

class NaiveSnRunner : public MeanRunner {
 public:
  NaiveSnRunner(const LawInfo& law, const Scenario& sc)
      : law_(law),
        cs_(law.a, law.b, sc.alpha,
            tune_rho_for_time(std::max(law.variance, 1e-6) * sc.opt_time, sc.alpha)) {}
  void observe(double x) override { cs_.observe(x); }
  bool covers_truth() override { return cs_.covers(law_.mean); }
  double width() override { return clipped_width(cs_.interval(), law_.a, law_.b); }

 private:
  LawInfo law_;
  NaiveSnCs cs_;
};

class PointwiseRunner : public MeanRunner {
 public:
  PointwiseRunner(const LawInfo& law, const Scenario& sc)
      : law_(law), cs_(law.a, law.b, sc.alpha) {}
  void observe(double x) override { cs_.update(x); }
  bool covers_truth() override { return !cs_.reject(law_.mean); }
  double width() override { return clipped_width(cs_.interval(), law_.a, law_.b); }

 private:
  LawInfo law_;
  PointwiseBernoulliTest cs_;
};

class CltRunner : public MeanRunner {
 public:
  CltRunner(const LawInfo& law, const Scenario& sc)
      : law_(law), z_(inv_std_normal_cdf(1.0 - sc.alpha / 2.0)) {}
  void observe(double x) override {
    ++t_;
    sum_ += x;
    sumsq_ += x * x;
  }
  bool covers_truth() override {
    double r = radius();
    if (r == kInf) return true;
    return std::fabs(sum_ / static_cast<double>(t_) - law_.mean) < r;
  }
  double width() override {
    double r = radius();
    if (r == kInf) return law_.b - law_.a;
    double mean = sum_ / static_cast<double>(t_);
    return clipped_width(CsInterval{t_, mean - r, mean + r}, law_.a, law_.b);
  }

 private:
  double radius() const {
    if (t_ < 2) return kInf;
    double td = static_cast<double>(t_);
    double mean = sum_ / td;
    double var = std::max((sumsq_ - td * mean * mean) / (td - 1.0), 0.0);
    return z_ * std::sqrt(var / td);
  }
  LawInfo law_;
  double z_;
  std::int64_t t_ = 0;
  double sum_ = 0.0, sumsq_ = 0.0;
};

std::unique_ptr<MeanRunner> make_mean_runner(const std::string& name, const LawInfo& law,
                                             const Scenario& sc) {
  if (name == "hoeffding") return std::make_unique<HoeffdingRunner>(law, sc);
  if (name == "beta-binomial") return std::make_unique<BetaBinomialRunner>(law, sc);
  if (name == "empirical-bernstein") return std::make_unique<EmpiricalBernsteinRunner>(law, sc);
  if (name == "naive-sn") return std::make_unique<NaiveSnRunner>(law, sc);
  if (name == "pointwise") return std::make_unique<PointwiseRunner>(law, sc);
  if (name == "clt") return std::make_unique<CltRunner>(law, sc);
  throw std::invalid_argument("unknown strategy: " + name);
}

// ---------------------------------------------------------------------------
// Parallel replication driver

void parallel_reps(int reps, const std::function<void(int)>& body) {
  int n = std::min(thread_budget(), reps);
  if (n <= 1) {
    for (int r = 0; r < reps; ++r) body(r);
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr err;
  std::mutex err_mu;
  for (int i = 0; i < n; ++i) {
    pool.emplace_back([&, i] {
      try {
        for (int r = i; r < reps; r += n) body(r);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mu);
        if (!err) err = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

struct RepRecord {
  std::int64_t crossed_at = -1;  // first time the truth was excluded
  std::vector<double> widths;    // per grid point
};

SimReport reduce(const Scenario& sc, const std::vector<std::int64_t>& grid,
                 const std::vector<std::string>& strategies,
                 const std::vector<std::vector<RepRecord>>& records) {
  SimReport report;
  for (std::size_t s = 0; s < strategies.size(); ++s) {
    for (std::size_t g = 0; g < grid.size(); ++g) {
      std::int64_t tg = grid[g];
      int crossed = 0;
      double wsum = 0.0;
      for (int r = 0; r < sc.reps; ++r) {
        const RepRecord& rec = records[s][r];
        if (rec.crossed_at >= 0 && rec.crossed_at <= tg) ++crossed;
        wsum += rec.widths[g];
      }
      double rate = static_cast<double>(crossed) / sc.reps;
      double se = std::sqrt(std::max(rate * (1.0 - rate), 0.0) / sc.reps);
      report.rows.push_back(SimRow{sc.name, strategies[s], tg, rate, se, wsum / sc.reps});
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Law-specific scenario drivers

SimReport run_mean_scenario(const Scenario& sc) {
  LawInfo law = mean_law_info(sc);
  auto grid = log_grid(sc.horizon, sc.grid_points);
  std::vector<std::vector<RepRecord>> records(sc.strategies.size());
  for (auto& v : records) v.assign(sc.reps, RepRecord{});

  parallel_reps(sc.reps, [&](int r) {
    Rng rng(stream_key(sc.seed, static_cast<std::uint64_t>(r)));
    std::vector<std::unique_ptr<MeanRunner>> runners;
    for (const auto& name : sc.strategies) runners.push_back(make_mean_runner(name, law, sc));
    std::vector<RepRecord> recs(runners.size());
    for (auto& rec : recs) rec.widths.assign(grid.size(), 0.0);
    std::size_t gi = 0;
    for (std::int64_t t = 1; t <= sc.horizon; ++t) {
      double x = draw(sc.law, sc.p, rng);
      for (std::size_t s = 0; s < runners.size(); ++s) {
        runners[s]->observe(x);
        if (recs[s].crossed_at < 0 && !runners[s]->covers_truth()) recs[s].crossed_at = t;
      }
      if (gi < grid.size() && t == grid[gi]) {
        for (std::size_t s = 0; s < runners.size(); ++s)
          recs[s].widths[gi] = runners[s]->width();
        ++gi;
      }
    }
    for (std::size_t s = 0; s < runners.size(); ++s) records[s][r] = std::move(recs[s]);
  });
  return reduce(sc, grid, sc.strategies, records);
}

SimReport run_ate_scenario(const Scenario& sc) {
  auto grid = log_grid(sc.horizon, sc.grid_points);
  std::vector<std::vector<RepRecord>> records(1);
  records[0].assign(sc.reps, RepRecord{});
  const double p_treat = 0.5;
  const double rho = 12.6;

  parallel_reps(sc.reps, [&](int r) {
    Rng rng(stream_key(sc.seed, static_cast<std::uint64_t>(r)));
    AteCs cs(p_treat, sc.alpha, rho);
    RepRecord rec;
    rec.widths.assign(grid.size(), 0.0);
    double effect_sum = 0.0;
    std::size_t gi = 0;
    for (std::int64_t t = 1; t <= sc.horizon; ++t) {
      int y0 = rng.bernoulli(0.5) ? 1 : 0;
      int xi = rng.bernoulli(0.2) ? 1 : 0;
      int y1 = std::max(xi, y0);
      int z = rng.bernoulli(p_treat) ? 1 : 0;
      double y_obs = z ? y1 : y0;
      effect_sum += y1 - y0;
      cs.update(z, p_treat, y_obs);
      double ate_t = effect_sum / static_cast<double>(t);
      if (rec.crossed_at < 0 && !cs.covers(ate_t, 2.0 * sc.alpha)) rec.crossed_at = t;
      if (gi < grid.size() && t == grid[gi]) {
        CsInterval ci = cs.interval();
        rec.widths[gi] = ci.width();
        ++gi;
      }
    }
    records[0][r] = std::move(rec);
  });
  return reduce(sc, grid, {"empirical-bernstein-ate"}, records);
}

SimReport run_covariance_scenario(const Scenario& sc) {
  auto grid = log_grid(sc.horizon, sc.grid_points);
  std::vector<std::vector<RepRecord>> records(1);
  records[0].assign(sc.reps, RepRecord{});

  const double b = 4.0;
  const double sigma11 = 1.25, sigma12 = 0.75, sigma22 = 1.25;
  const double sigma_op = 2.0;  // largest eigenvalue of Sigma
  const int d = 2;
  DiscreteMixtureParams dm = DiscreteMixtureParams::lil(1.4, 0.262, 1.1);
  UniformBoundary u = discrete_mixture_boundary(dm, PsiFamily::gamma(2.0 * b / 3.0), sc.alpha,
                                                static_cast<double>(d));
  // u evaluated at v = b t ||Sigma|| = 8 t, tabulated once
  std::vector<double> utab(static_cast<std::size_t>(sc.horizon) + 1, 0.0);
  for (std::int64_t t = 1; t <= sc.horizon; ++t)
    utab[static_cast<std::size_t>(t)] = u(b * sigma_op * static_cast<double>(t));

  const double r2 = std::sqrt(2.0), ir2 = 1.0 / std::sqrt(2.0);

  parallel_reps(sc.reps, [&](int r) {
    Rng rng(stream_key(sc.seed, static_cast<std::uint64_t>(r)));
    RepRecord rec;
    rec.widths.assign(grid.size(), 0.0);
    double s11 = 0.0, s12 = 0.0, s22 = 0.0;
    std::size_t gi = 0;
    for (std::int64_t t = 1; t <= sc.horizon; ++t) {
      double u01 = rng.uniform();
      double x1, x2;
      if (u01 < 0.25) { x1 = r2; x2 = r2; }
      else if (u01 < 0.5) { x1 = -r2; x2 = -r2; }
      else if (u01 < 0.75) { x1 = ir2; x2 = -ir2; }
      else { x1 = -ir2; x2 = ir2; }
      s11 += x1 * x1;
      s12 += x1 * x2;
      s22 += x2 * x2;
      double td = static_cast<double>(t);
      double d11 = s11 / td - sigma11, d12 = s12 / td - sigma12, d22 = s22 / td - sigma22;
      double mid = 0.5 * (d11 + d22);
      double rad = std::sqrt(0.25 * (d11 - d22) * (d11 - d22) + d12 * d12);
      double dist = std::fabs(mid) + rad;
      if (rec.crossed_at < 0 && dist >= utab[static_cast<std::size_t>(t)] / td)
        rec.crossed_at = t;
      if (gi < grid.size() && t == grid[gi]) {
        rec.widths[gi] = 2.0 * utab[static_cast<std::size_t>(t)] / td;
        ++gi;
      }
    }
    records[0][r] = std::move(rec);
  });
  return reduce(sc, grid, {"covariance-membership"}, records);
}

SimReport run_variance_scenario(const Scenario& sc) {
  auto grid = log_grid(sc.horizon, sc.grid_points);
  std::vector<std::vector<RepRecord>> records(1);
  records[0].assign(sc.reps, RepRecord{});

  double a_side = sc.alpha / 2.0;
  double rho = tune_rho_for_time(2.0 * sc.opt_time, sc.alpha);
  UniformBoundary up = mixture_boundary(MixtureKind::gamma_exponential,
                                        MixtureParams{rho, 2.0, 0.0, 0.0}, a_side);
  UniformBoundary lo = mixture_boundary(MixtureKind::normal_one_sided,
                                        MixtureParams{rho, 0.0, 0.0, 0.0}, a_side);
  std::vector<double> up_tab(static_cast<std::size_t>(sc.horizon), 0.0);
  std::vector<double> lo_tab(static_cast<std::size_t>(sc.horizon), 0.0);
  for (std::int64_t t = 1; t < sc.horizon; ++t) {
    up_tab[static_cast<std::size_t>(t)] = up(2.0 * static_cast<double>(t));
    lo_tab[static_cast<std::size_t>(t)] = lo(2.0 * static_cast<double>(t));
  }
  double sd = std::sqrt(sc.sigma2);

  parallel_reps(sc.reps, [&](int r) {
    Rng rng(stream_key(sc.seed, static_cast<std::uint64_t>(r)));
    RepRecord rec;
    rec.widths.assign(grid.size(), 0.0);
    double mean = 0.0, q = 0.0;
    std::size_t gi = 0;
    for (std::int64_t n = 1; n <= sc.horizon; ++n) {
      double x = sc.mu + sd * rng.normal();
      double delta = x - mean;
      mean += delta / static_cast<double>(n);
      q += delta * (x - mean);
      std::int64_t t = n - 1;
      if (t >= 1) {
        double td = static_cast<double>(t);
        double s = q / sc.sigma2 - td;
        double uu = up_tab[static_cast<std::size_t>(t)];
        double ul = lo_tab[static_cast<std::size_t>(t)];
        if (rec.crossed_at < 0 && !(-ul < s && s < uu)) rec.crossed_at = n;
        if (gi < grid.size() && n == grid[gi]) {
          double lower = q / (td + uu);
          double upper = td > ul ? q / (td - ul) : kInf;
          rec.widths[gi] = upper - lower;
          ++gi;
        }
      } else if (gi < grid.size() && n == grid[gi]) {
        rec.widths[gi] = kInf;
        ++gi;
      }
    }
    records[0][r] = std::move(rec);
  });
  return reduce(sc, grid, {"variance"}, records);
}

UniformBoundary crossing_boundary(const std::string& name, const Scenario& sc) {
  double alpha = sc.alpha;
  if (name == "linear") return linear_boundary(PsiFamily::normal(), 1.0, alpha);
  if (name == "stitched")
    return stitched_boundary(StitchParams::polynomial(2.0, 1.4, 1.0, 0.0), alpha);
  if (name == "normal-mixture") {
    double rho = tune_rho_for_time(sc.opt_time, std::min(2.0 * alpha, 0.999));
    return mixture_boundary(MixtureKind::normal_one_sided, MixtureParams{rho, 0.0, 0.0, 0.0},
                            alpha);
  }
  if (name == "discrete-mixture") {
    double lb = discrete_mixture_lambda_bar(0.0, sc.opt_time, alpha);
    double rho = tune_rho_for_time(sc.opt_time, std::min(2.0 * alpha, 0.999));
    return discrete_mixture_boundary(DiscreteMixtureParams::half_normal(rho, lb, 1.05),
                                     PsiFamily::normal(), alpha);
  }
  if (name == "inverted-stitching") {
    auto g = [](double v) {
      return 1.7 * std::sqrt(v * (std::log(std::log(std::exp(1.0) * v)) + 3.46));
    };
    std::vector<double> etas = default_eta_grid();
    etas.push_back(2.99);
    return inverted_stitching_boundary(g, 1e20, etas);
  }
  if (name == "converted-row5") {
    UniformBoundary src =
        stitched_boundary(StitchParams::polynomial(2.0, 1.4, 1.0, 1.0 / 3.0), alpha);
    return convert_boundary(src, PsiFamily::poisson(1.0), 5);
  }
  throw std::invalid_argument("unknown boundary strategy: " + name);
}

SimReport run_crossing_scenario(const Scenario& sc) {
  auto grid = log_grid(sc.horizon, sc.grid_points);
  std::vector<std::vector<RepRecord>> records(sc.strategies.size());
  for (auto& v : records) v.assign(sc.reps, RepRecord{});

  // u tables at integer intrinsic times
  std::vector<std::vector<double>> utab(sc.strategies.size());
  std::vector<DataLaw> laws(sc.strategies.size(), DataLaw::gaussian_increments);
  for (std::size_t s = 0; s < sc.strategies.size(); ++s) {
    UniformBoundary u = crossing_boundary(sc.strategies[s], sc);
    utab[s].assign(static_cast<std::size_t>(sc.horizon) + 1, 0.0);
    for (std::int64_t t = 1; t <= sc.horizon; ++t)
      utab[s][static_cast<std::size_t>(t)] = u(static_cast<double>(t));
    if (sc.strategies[s] == "converted-row5") laws[s] = DataLaw::rademacher;
  }

  parallel_reps(sc.reps, [&](int r) {
    for (std::size_t s = 0; s < sc.strategies.size(); ++s) {
      Rng rng(stream_key(sc.seed + 1315423911ULL * s, static_cast<std::uint64_t>(r)));
      RepRecord rec;
      rec.widths.assign(grid.size(), 0.0);
      double sum = 0.0;
      std::size_t gi = 0;
      for (std::int64_t t = 1; t <= sc.horizon; ++t) {
        sum += laws[s] == DataLaw::rademacher ? rng.rademacher() : rng.normal();
        if (rec.crossed_at < 0 && sum >= utab[s][static_cast<std::size_t>(t)])
          rec.crossed_at = t;
        if (gi < grid.size() && t == grid[gi]) {
          rec.widths[gi] = utab[s][static_cast<std::size_t>(t)] / static_cast<double>(t);
          ++gi;
        }
      }
      records[s][r] = std::move(rec);
    }
  });
  return reduce(sc, grid, sc.strategies, records);
}

}  // namespace

int thread_budget() {
  if (const char* env = std::getenv("CONFSEQ_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

Scenario make_scenario(const std::string& name) {
  Scenario sc;
  sc.name = name;
  if (name == "bernoulli05" || name == "bernoulli001") {
    sc.law = DataLaw::bernoulli;
    sc.p = name == "bernoulli05" ? 0.5 : 0.01;
    sc.strategies = {"hoeffding", "beta-binomial", "empirical-bernstein", "naive-sn",
                     "pointwise"};
  } else if (name == "three-point") {
    sc.law = DataLaw::three_point;
    sc.strategies = {"hoeffding", "beta-binomial", "empirical-bernstein", "naive-sn",
                     "pointwise"};
  } else if (name == "rademacher") {
    sc.law = DataLaw::rademacher;
    sc.strategies = {"clt", "hoeffding"};
  } else if (name == "normal-variance") {
    sc.law = DataLaw::normal;
    sc.mu = 3.0;
    sc.sigma2 = 4.0;
    sc.strategies = {"variance"};
  } else if (name == "ate-fig4") {
    sc.law = DataLaw::ate_fig4;
    sc.reps = 500;
    sc.strategies = {"empirical-bernstein-ate"};
  } else if (name == "covariance-fig5") {
    sc.law = DataLaw::covariance_fig5;
    sc.reps = 200;
    sc.strategies = {"covariance-membership"};
  } else if (name == "gaussian-crossing") {
    sc.law = DataLaw::gaussian_increments;
    sc.reps = 1000;
    sc.strategies = {"linear", "stitched", "normal-mixture", "discrete-mixture",
                     "inverted-stitching", "converted-row5"};
  } else {
    throw std::invalid_argument("unknown scenario: " + name);
  }
  return sc;
}

std::vector<std::string> scenario_names() {
  return {"bernoulli05",     "bernoulli001", "three-point",     "rademacher",
          "normal-variance", "ate-fig4",     "covariance-fig5", "gaussian-crossing"};
}

SimReport run_scenario(const Scenario& sc) {
  if (sc.horizon < 1 || sc.reps < 1) throw std::domain_error("run_scenario: T, R must be >= 1");
  switch (sc.law) {
    case DataLaw::rademacher:
    case DataLaw::bernoulli:
    case DataLaw::three_point:
      return run_mean_scenario(sc);
    case DataLaw::normal:
      return run_variance_scenario(sc);
    case DataLaw::ate_fig4:
      return run_ate_scenario(sc);
    case DataLaw::covariance_fig5:
      return run_covariance_scenario(sc);
    case DataLaw::gaussian_increments:
      return run_crossing_scenario(sc);
  }
  throw std::invalid_argument("unknown law");
}

void SimReport::write(std::ostream& os, char delim) const {
  os << "scenario" << delim << "strategy" << delim << "t" << delim << "cum_miscoverage" << delim
     << "mc_stderr" << delim << "mean_width" << "\n";
  char buf[64];
  for (const auto& row : rows) {
    os << row.scenario << delim << row.strategy << delim << row.t;
    for (double v : {row.cum_miscoverage, row.mc_stderr, row.mean_width}) {
      std::snprintf(buf, sizeof buf, "%.10g", v);
      os << delim << buf;
    }
    os << "\n";
  }
}

CrossingEstimate crossing_probability_mc(const UniformBoundary& u, DataLaw law, std::int64_t T,
                                         int R, std::uint64_t seed) {
  if (law != DataLaw::gaussian_increments && law != DataLaw::rademacher)
    throw std::invalid_argument("crossing_probability_mc: unsupported process law");
  if (T < 1 || R < 1) throw std::domain_error("crossing_probability_mc: T, R must be >= 1");
  std::vector<double> utab(static_cast<std::size_t>(T) + 1, 0.0);
  for (std::int64_t t = 1; t <= T; ++t) utab[static_cast<std::size_t>(t)] = u(static_cast<double>(t));

  std::vector<char> crossed(R, 0);
  parallel_reps(R, [&](int r) {
    Rng rng(stream_key(seed, static_cast<std::uint64_t>(r)));
    double sum = 0.0;
    for (std::int64_t t = 1; t <= T; ++t) {
      sum += law == DataLaw::rademacher ? rng.rademacher() : rng.normal();
      if (sum >= utab[static_cast<std::size_t>(t)]) {
        crossed[r] = 1;
        break;
      }
    }
  });
  CrossingEstimate est;
  est.paths = R;
  for (char c : crossed) est.crossed += c;
  est.rate = static_cast<double>(est.crossed) / R;
  est.stderr_ = std::sqrt(std::max(est.rate * (1.0 - est.rate), 0.0) / R);
  return est;
}

}  // namespace confseq
