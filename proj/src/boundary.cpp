#include "confseq/boundary.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

namespace confseq {

UniformBoundary::UniformBoundary(PsiFamily family, double alpha, double l0, std::string kind,
                                 std::map<std::string, double> params,
                                 std::function<double(double)> eval) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("UniformBoundary: alpha in (0,1)");
  if (!(l0 >= 1.0)) throw std::domain_error("UniformBoundary: l0 must be >= 1");
  auto d = std::make_shared<Data>();
  d->family = family;
  d->alpha = alpha;
  d->l0 = l0;
  d->kind = std::move(kind);
  d->params = std::move(params);
  d->eval = std::move(eval);
  data_ = std::move(d);
}

double varphi(double g, double h) {
  if (g < h) return (h * h - g * g) / (2.0 * std::log(h / g));
  return g * h;
}

namespace {

bool close(double a, double b) {
  return std::fabs(a - b) <= 1e-9 * (1.0 + std::fabs(a) + std::fabs(b));
}

struct ConversionRow {
  int id;
  // matches source family and target family; fills factor a
  bool (*match)(const PsiFamily& src, const PsiFamily& tgt, double* a);
};

const ConversionRow kRows[] = {
    {1, [](const PsiFamily& s, const PsiFamily& t, double* a) {
       if (s.kind() != PsiKind::normal || t.kind() != PsiKind::bernoulli) return false;
       *a = varphi(t.g(), t.h()) / (t.g() * t.h());
       return true;
     }},
    {2, [](const PsiFamily& s, const PsiFamily& t, double* a) {
       if (s.kind() != PsiKind::normal || t.kind() != PsiKind::bernoulli) return false;
       double gh = t.g() + t.h();
       *a = gh * gh / (4.0 * t.g() * t.h());
       return true;
     }},
    {3, [](const PsiFamily& s, const PsiFamily& t, double* a) {
       if (s.kind() != PsiKind::poisson || t.kind() != PsiKind::bernoulli) return false;
       if (!close(t.h(), t.g() + s.scale())) return false;
       if (!(t.g() > -s.scale())) return false;
       *a = 1.0;
       return true;
     }},
    {5, [](const PsiFamily& s, const PsiFamily& t, double* a) {
       if (s.kind() != PsiKind::gamma || t.kind() != PsiKind::poisson) return false;
       if (!close(t.scale(), 3.0 * s.scale())) return false;
       *a = 1.0;
       return true;
     }},
    {6, [](const PsiFamily& s, const PsiFamily& t, double* a) {
       if (s.kind() != PsiKind::exponential || t.kind() != PsiKind::gamma) return false;
       if (!close(t.scale(), 2.0 * s.scale() / 3.0)) return false;
       *a = 1.0;
       return true;
     }},
    {7, [](const PsiFamily& s, const PsiFamily& t, double* a) {
       if (s.kind() != PsiKind::gamma || t.kind() != PsiKind::exponential) return false;
       if (!(s.scale() >= 0.0)) return false;
       if (!close(t.scale(), s.scale())) return false;
       *a = 1.0;
       return true;
     }},
    {8, [](const PsiFamily& s, const PsiFamily& t, double* a) {
       if (s.kind() != PsiKind::gamma || t.kind() != PsiKind::exponential) return false;
       if (!(s.scale() < 0.0)) return false;
       if (!close(t.scale(), 2.0 * s.scale())) return false;
       *a = 1.0;
       return true;
     }},
    {9, [](const PsiFamily& s, const PsiFamily& t, double* a) {
       if (s.kind() != PsiKind::poisson || t.kind() != PsiKind::gamma) return false;
       if (!(s.scale() < 0.0)) return false;
       if (!close(t.scale(), s.scale() / 2.0)) return false;
       *a = 1.0;
       return true;
     }},
    {10, [](const PsiFamily& s, const PsiFamily& t, double* a) {
       if (s.kind() != PsiKind::normal || t.kind() != PsiKind::poisson) return false;
       if (!(t.scale() < 0.0)) return false;
       *a = 1.0;
       return true;
     }},
    {11, [](const PsiFamily& s, const PsiFamily& t, double* a) {
       if (s.kind() != PsiKind::bernoulli || t.kind() != PsiKind::poisson) return false;
       if (!close(t.scale(), -s.g())) return false;
       *a = 1.0;
       return true;
     }},
};

const char* valid_targets(PsiKind src) {
  switch (src) {
    case PsiKind::normal:
      return "bernoulli(g,h) [rows 1,2], poisson(c<0) [row 10]";
    case PsiKind::poisson:
      return "bernoulli(g,g+c) with g>-c [row 3], gamma(c/2) with c<0 [row 9]";
    case PsiKind::gamma:
      return "poisson(3c) [row 5], exponential(c) with c>=0 [row 7], exponential(2c) with c<0 [row 8]";
    case PsiKind::exponential:
      return "gamma(2c/3) [row 6]";
    case PsiKind::bernoulli:
      return "poisson(-g) [row 11]";
  }
  return "";
}

}  // namespace

UniformBoundary convert_boundary(const UniformBoundary& u, const PsiFamily& target,
                                 std::optional<int> row) {
  double best_a = 0.0;
  int best_row = -1;
  for (const auto& r : kRows) {
    if (row && *row != r.id) continue;
    double a;
    if (r.match(u.family(), target, &a)) {
      if (best_row < 0 || a < best_a) {
        best_a = a;
        best_row = r.id;
      }
    }
  }
  if (best_row < 0) {
    std::ostringstream msg;
    msg << "convert_boundary: no conversion from " << u.family().name() << " to "
        << target.name();
    if (row) msg << " via row " << *row;
    msg << "; valid targets for " << u.family().name() << ": " << valid_targets(u.family().kind());
    throw std::domain_error(msg.str());
  }
  auto params = u.params();
  params["conversion_row"] = best_row;
  params["conversion_factor"] = best_a;
  double a = best_a;
  UniformBoundary src = u;
  return UniformBoundary(target, u.alpha(), u.l0(), "converted:" + u.kind(), std::move(params),
                         [src, a](double v) { return src(a * v); });
}

}  // namespace confseq
