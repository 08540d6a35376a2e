#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "confseq/psi.hpp"

namespace confseq {

// An evaluable uniform crossing boundary v -> u(v) with its crossing
// probability alpha, initial-value constant l0 and psi family. Immutable
// after construction; evaluation is pure and safe for concurrent use.
class UniformBoundary {
 public:
  UniformBoundary() = default;
  UniformBoundary(PsiFamily family, double alpha, double l0, std::string kind,
                  std::map<std::string, double> params, std::function<double(double)> eval);

  double operator()(double v) const { return data_->eval(v); }

  const PsiFamily& family() const { return data_->family; }
  double alpha() const { return data_->alpha; }
  double l0() const { return data_->l0; }
  const std::string& kind() const { return data_->kind; }
  const std::map<std::string, double>& params() const { return data_->params; }

  bool valid() const { return static_cast<bool>(data_); }

 private:
  struct Data {
    PsiFamily family = PsiFamily::normal();
    double alpha = 0.0;
    double l0 = 1.0;
    std::string kind;
    std::map<std::string, double> params;
    std::function<double(double)> eval;
  };
  std::shared_ptr<const Data> data_;
};

// Cross-family boundary transport: when the (source, target) pair matches a
// table row and its restriction, v -> u(a v) is a valid boundary for the
// target family. `row` pins a specific table row; when omitted the matching
// row with the smallest factor a is used. Throws with the list of valid
// targets when no row applies.
UniformBoundary convert_boundary(const UniformBoundary& u, const PsiFamily& target,
                                 std::optional<int> row = std::nullopt);

// Factor used by conversion row (1): (h^2 - g^2) / (2 log(h/g)) for g < h,
// g h otherwise.
double varphi(double g, double h);

}  // namespace confseq
