#pragma once

#include <map>
#include <optional>
#include <string>

#include "confseq/boundary.hpp"

namespace confseq {

// Plain-text key-value description of a boundary, as exchanged with the CLI.
// Keys: kind, family, alpha, l0, lambda, eta, s, m, c, rho, opt_time, g, h,
// lambda_bar, v_max, A, C. One `key = value` per line, `#` comments.
struct BoundarySpec {
  std::string kind;    // linear | stitch-poly | stitch-exp | normal2 | normal1 |
                       // betabinom2 | betabinom1 | gammaexp | gammapoisson |
                       // dm-lil | dm-halfnormal | inverted-lil
  std::string family;  // normal | bernoulli | poisson | exponential | gamma
  double alpha = 0.05;
  double l0 = 1.0;
  std::map<std::string, double> num;  // numeric parameters by key

  std::optional<double> get(const std::string& key) const;
  double require(const std::string& key) const;

  static BoundarySpec parse(const std::string& text);
  std::string to_text() const;
};

// Builds the boundary a spec describes. `opt_time` (intrinsic time) routes
// through the Lambert-W tuning rule and is mutually exclusive with `rho`;
// one-sided mixture kinds tune with alpha doubled.
UniformBoundary make_boundary(const BoundarySpec& spec);

}  // namespace confseq
