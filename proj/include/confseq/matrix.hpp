#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "confseq/boundaries.hpp"

namespace confseq {

// Dense symmetric matrix, upper-triangle storage.
class SymMatrix {
 public:
  explicit SymMatrix(int dim);
  static SymMatrix identity(int dim);

  int dim() const { return dim_; }
  double& at(int i, int j);
  double at(int i, int j) const;

  void add_outer(std::span<const double> x, double w = 1.0);  // A += w x x^T
  SymMatrix scaled(double s) const;

  friend SymMatrix operator-(const SymMatrix& a, const SymMatrix& b);

 private:
  int dim_;
  std::vector<double> e_;  // row-major upper triangle
};

// Eigenvalues by cyclic Jacobi sweeps (ascending order).
std::vector<double> jacobi_eigenvalues(const SymMatrix& m);
double max_eigenvalue(const SymMatrix& m);
double op_norm(const SymMatrix& m);  // largest absolute eigenvalue

// Iterated-logarithm-rate boundary for the maximum eigenvalue of a matrix
// martingale with increments bounded by b: polynomial stitching with gamma
// scale b/3 and l0 = d.
UniformBoundary matrix_lil_boundary(double b, double eta, double s, double m, double alpha,
                                    int d);

// Operator-norm confidence sequence for the covariance of i.i.d. mean-zero
// vectors with ||x||^2 <= b, driven by a sub-Poisson boundary with scale 2b
// and l0 = d. The exact membership test uses the unknown ||Sigma||; the
// conservative ball plugs in ||Sigma|| <= b.
class CovarianceCs {
 public:
  CovarianceCs(int dim, double b, UniformBoundary boundary);

  void update(std::span<const double> x);  // throws when ||x||^2 > b

  std::int64_t t() const { return t_; }
  SymMatrix sigma_hat() const;

  // u(b t sigma_op) / t
  double radius(double sigma_op) const;
  double conservative_radius() const { return radius(b_); }
  bool contains(const SymMatrix& sigma) const;

 private:
  int dim_;
  double b_;
  UniformBoundary u_;
  std::int64_t t_ = 0;
  SymMatrix sum_outer_;
};

}  // namespace confseq
