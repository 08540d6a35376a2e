#pragma once

#include <cmath>
#include <cstdint>

namespace confseq {

// Deterministic, platform-independent generators. Replication streams are
// keyed by (seed, rep) so results do not depend on scheduling.

struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t s) : state(s) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
};

inline std::uint64_t stream_key(std::uint64_t seed, std::uint64_t rep) {
  SplitMix64 mix(seed ^ 0x6a09e667f3bcc909ULL);
  std::uint64_t a = mix.next();
  SplitMix64 mix2(rep + 0x9e3779b97f4a7c15ULL);
  return a ^ mix2.next();
}

class Rng {
 public:
  explicit Rng(std::uint64_t key) {
    SplitMix64 mix(key);
    for (auto& s : s_) s = mix.next();
  }

  std::uint64_t next() {
    std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // uniform on [0, 1) with 53 random bits
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

  double rademacher() { return (next() & 1ULL) ? 1.0 : -1.0; }

  // Box-Muller with one cached value
  double normal() {
    if (has_cache_) {
      has_cache_ = false;
      return cache_;
    }
    double u1, u2;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * M_PI * u2;
    cache_ = r * std::sin(a);
    has_cache_ = true;
    return r * std::cos(a);
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  std::uint64_t s_[4];
  double cache_ = 0.0;
  bool has_cache_ = false;
};

}  // namespace confseq
