#pragma once

#include <stdexcept>

namespace confseq {

// Tolerances and iteration budget shared by the iterative kernels and the
// bracketed root-finder.
struct AccuracySpec {
  double rel_tol = 1e-12;
  double abs_tol = 0.0;
  int max_iter = 200;

  void validate() const {
    if (!(rel_tol > 0.0)) throw std::domain_error("AccuracySpec: rel_tol must be > 0");
    if (!(abs_tol >= 0.0)) throw std::domain_error("AccuracySpec: abs_tol must be >= 0");
    if (max_iter < 1) throw std::domain_error("AccuracySpec: max_iter must be >= 1");
  }
};

}  // namespace confseq
