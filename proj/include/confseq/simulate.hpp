#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "confseq/boundary.hpp"

namespace confseq {

enum class DataLaw {
  rademacher,
  bernoulli,
  three_point,
  normal,
  ate_fig4,
  covariance_fig5,
  gaussian_increments,
};

// A fully seeded Monte-Carlo experiment: the report is a deterministic
// function of the scenario, for any thread count.
struct Scenario {
  std::string name;
  DataLaw law = DataLaw::bernoulli;
  double p = 0.5;                     // bernoulli parameter
  double mu = 0.0, sigma2 = 1.0;      // normal-law parameters
  std::vector<std::string> strategies;
  std::int64_t horizon = 10000;
  int reps = 1000;
  std::uint64_t seed = 1;
  double alpha = 0.05;
  double opt_time = 500.0;            // sample count the boundaries are tuned for
  int grid_points = 50;
};

// Named presets: bernoulli05, bernoulli001, three-point, rademacher,
// normal-variance, ate-fig4, covariance-fig5, gaussian-crossing.
Scenario make_scenario(const std::string& name);
std::vector<std::string> scenario_names();

struct SimRow {
  std::string scenario;
  std::string strategy;
  std::int64_t t = 0;
  double cum_miscoverage = 0.0;
  double mc_stderr = 0.0;
  double mean_width = 0.0;
};

struct SimReport {
  std::vector<SimRow> rows;
  void write(std::ostream& os, char delim = ',') const;
};

SimReport run_scenario(const Scenario& sc);

struct CrossingEstimate {
  double rate = 0.0;
  double stderr_ = 0.0;
  int crossed = 0;
  int paths = 0;
};

// Fraction of simulated paths with S_t >= u(V_t) for some t <= T. Supported
// process laws: gaussian_increments and rademacher, both with V_t = t.
CrossingEstimate crossing_probability_mc(const UniformBoundary& u, DataLaw law,
                                         std::int64_t T, int R, std::uint64_t seed);

// Thread budget: CONFSEQ_THREADS when set, hardware concurrency otherwise.
int thread_budget();

}  // namespace confseq
