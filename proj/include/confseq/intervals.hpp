#pragma once

#include <cstdint>
#include <functional>
#include <limits>

namespace confseq {

struct CsInterval {
  std::int64_t t = 0;
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();

  double width() const { return upper - lower; }
  bool contains(double x) const { return lower < x && x < upper; }
};

// Componentwise max of lowers / min of uppers over the stream so far. Keeps
// reporting the crossed bounds after the intersection first becomes empty;
// the event and its time are flagged.
class RunningIntersection {
 public:
  CsInterval feed(const CsInterval& ci) {
    cur_.t = ci.t;
    if (ci.lower > cur_.lower) cur_.lower = ci.lower;
    if (ci.upper < cur_.upper) cur_.upper = ci.upper;
    if (!empty_ && cur_.lower > cur_.upper) {
      empty_ = true;
      empty_since_ = ci.t;
    }
    return cur_;
  }

  bool empty() const { return empty_; }
  std::int64_t empty_since() const { return empty_since_; }

 private:
  CsInterval cur_;
  bool empty_ = false;
  std::int64_t empty_since_ = -1;
};

// Smallest alpha in (alpha_floor, 1) at which `covers(alpha)` turns false,
// by bisection over the alpha-monotone family. Returns 1 when even the
// narrowest interval covers, alpha_floor when even the widest excludes.
double smallest_excluding_alpha(const std::function<bool(double)>& covers,
                                double alpha_floor = 1e-8, double tol = 1e-6,
                                int max_iter = 40);

// Running-minimum always-valid p-value stream against a fixed null.
class AlwaysValidP {
 public:
  double update(const std::function<bool(double)>& covers_at_alpha) {
    double a = smallest_excluding_alpha(covers_at_alpha);
    if (a < p_) p_ = a;
    return p_;
  }
  double value() const { return p_; }

 private:
  double p_ = 1.0;
};

}  // namespace confseq
