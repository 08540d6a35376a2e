#include "confseq/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace confseq {

SymMatrix::SymMatrix(int dim) : dim_(dim) {
  if (dim < 1) throw std::domain_error("SymMatrix: dim must be >= 1");
  e_.assign(static_cast<std::size_t>(dim) * (dim + 1) / 2, 0.0);
}

SymMatrix SymMatrix::identity(int dim) {
  SymMatrix m(dim);
  for (int i = 0; i < dim; ++i) m.at(i, i) = 1.0;
  return m;
}

double& SymMatrix::at(int i, int j) {
  if (i > j) std::swap(i, j);
  return e_[static_cast<std::size_t>(i) * (2 * dim_ - i - 1) / 2 + j];
}

double SymMatrix::at(int i, int j) const {
  if (i > j) std::swap(i, j);
  return e_[static_cast<std::size_t>(i) * (2 * dim_ - i - 1) / 2 + j];
}

void SymMatrix::add_outer(std::span<const double> x, double w) {
  if (static_cast<int>(x.size()) != dim_) throw std::domain_error("SymMatrix: size mismatch");
  for (int i = 0; i < dim_; ++i)
    for (int j = i; j < dim_; ++j) at(i, j) += w * x[i] * x[j];
}

SymMatrix SymMatrix::scaled(double s) const {
  SymMatrix m(dim_);
  for (std::size_t k = 0; k < e_.size(); ++k) m.e_[k] = e_[k] * s;
  return m;
}

SymMatrix operator-(const SymMatrix& a, const SymMatrix& b) {
  if (a.dim_ != b.dim_) throw std::domain_error("SymMatrix: dim mismatch");
  SymMatrix m(a.dim_);
  for (std::size_t k = 0; k < m.e_.size(); ++k) m.e_[k] = a.e_[k] - b.e_[k];
  return m;
}

std::vector<double> jacobi_eigenvalues(const SymMatrix& m) {
  int n = m.dim();
  std::vector<std::vector<double>> a(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = m.at(i, j);

  double scale = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) scale = std::max(scale, std::fabs(a[i][j]));
  if (scale == 0.0) return std::vector<double>(n, 0.0);

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
    if (off <= 1e-30 * scale * scale) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        if (std::fabs(a[p][q]) <= 1e-300) continue;
        double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        double t = (theta >= 0.0 ? 1.0 : -1.0) /
                   (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        for (int k = 0; k < n; ++k) {
          double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> eig(n);
  for (int i = 0; i < n; ++i) eig[i] = a[i][i];
  std::sort(eig.begin(), eig.end());
  return eig;
}

double max_eigenvalue(const SymMatrix& m) { return jacobi_eigenvalues(m).back(); }

double op_norm(const SymMatrix& m) {
  auto eig = jacobi_eigenvalues(m);
  return std::max(std::fabs(eig.front()), std::fabs(eig.back()));
}

UniformBoundary matrix_lil_boundary(double b, double eta, double s, double m, double alpha,
                                    int d) {
  if (!(b > 0.0)) throw std::domain_error("matrix_lil_boundary: b must be > 0");
  if (d < 1) throw std::domain_error("matrix_lil_boundary: d must be >= 1");
  StitchParams p = StitchParams::polynomial(eta, s, m, b / 3.0);
  return stitched_boundary(p, alpha, static_cast<double>(d));
}

CovarianceCs::CovarianceCs(int dim, double b, UniformBoundary boundary)
    : dim_(dim), b_(b), u_(std::move(boundary)), sum_outer_(dim) {
  if (!(b > 0.0)) throw std::domain_error("CovarianceCs: b must be > 0");
  if (!u_.valid()) throw std::domain_error("CovarianceCs: missing boundary");
}

void CovarianceCs::update(std::span<const double> x) {
  if (static_cast<int>(x.size()) != dim_) throw std::domain_error("CovarianceCs: size mismatch");
  double norm2 = 0.0;
  for (double xi : x) norm2 += xi * xi;
  if (norm2 > b_ + 1e-12) throw std::domain_error("CovarianceCs: ||x||^2 exceeds b");
  sum_outer_.add_outer(x);
  ++t_;
}

SymMatrix CovarianceCs::sigma_hat() const {
  if (t_ == 0) return SymMatrix(dim_);
  return sum_outer_.scaled(1.0 / static_cast<double>(t_));
}

double CovarianceCs::radius(double sigma_op) const {
  if (t_ == 0) return std::numeric_limits<double>::infinity();
  return u_(b_ * static_cast<double>(t_) * sigma_op) / static_cast<double>(t_);
}

bool CovarianceCs::contains(const SymMatrix& sigma) const {
  if (t_ == 0) return true;
  double dist = op_norm(sigma_hat() - sigma);
  return dist < radius(op_norm(sigma));
}

}  // namespace confseq
