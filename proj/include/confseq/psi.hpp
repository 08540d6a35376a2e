#pragma once

#include <string>

namespace confseq {

enum class PsiKind { bernoulli, normal, poisson, exponential, gamma };

// One of the five exponential-rate functions, scaled so that psi''(0+) = 1.
// The Poisson/exponential/gamma variants carry a scale c and reduce exactly
// to the normal case at c = 0; Bernoulli carries range parameters g, h > 0.
class PsiFamily {
 public:
  static PsiFamily bernoulli(double g, double h);
  static PsiFamily normal();
  static PsiFamily poisson(double c);
  static PsiFamily exponential(double c);
  static PsiFamily gamma(double c);

  PsiKind kind() const { return kind_; }
  double g() const { return g_; }
  double h() const { return h_; }
  double scale() const { return c_; }

  // Upper end of the lambda domain [0, lambda_max); infinite unless the
  // exponential/gamma scale is positive (convention 1/0 = inf).
  double lambda_max() const;
  // sup of psi' over the domain; the a.s. slope cap S_t <= b_bar * V_t.
  double b_bar() const;

  std::string name() const;
  bool operator==(const PsiFamily&) const = default;

 private:
  PsiFamily(PsiKind kind, double g, double h, double c) : kind_(kind), g_(g), h_(h), c_(c) {}
  PsiKind kind_;
  double g_ = 0.0, h_ = 0.0, c_ = 0.0;
};

double psi_eval(const PsiFamily& family, double lambda);
double psi_derivative(const PsiFamily& family, double lambda);

// Inverse of the gamma-case psi in its cancellation-free form
// 2 / (c + sqrt(c^2 + 2/u)).
double psi_g_inverse(double u, double c);

// Legendre-Fenchel transform psi*(x) = sup_{lambda in [0,lambda_max)}
// (lambda x - psi(lambda)); closed form for the normal and Bernoulli
// families, 1-D concave maximization otherwise. Returns +inf when the
// supremum diverges (x >= b_bar for the numeric families).
double legendre(const PsiFamily& family, double x);

}  // namespace confseq
