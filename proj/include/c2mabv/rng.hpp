#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace c2mabv::rng {

// Named per-replication streams. Adding a policy or reordering the policy
// list never perturbs another stream's draws.
enum class StreamKind : std::uint32_t {
  Instance = 0,  // synthetic instance parameters (shared by all replications)
  Env = 1,       // reward/cost draws
  Rounding = 2,  // discretization coin flips
  Policy = 3,    // exploration coins, posterior samples, tie jitter
};

// All distributions below are built on raw mt19937_64 output so that a
// (seed, replication, kind) triple produces the same sequence on every
// standard library.
class Stream {
 public:
  Stream() : eng_(0) {}
  explicit Stream(std::seed_seq& seq) : eng_(seq) {}

  std::uint64_t next_u64() { return eng_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform_real(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform on {lo, ..., hi}, inclusive, unbiased by rejection.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(next_u64());  // full range
    const std::uint64_t limit = (UINT64_MAX / span) * span;
    std::uint64_t x;
    do {
      x = next_u64();
    } while (x >= limit);
    return lo + static_cast<std::int64_t>(x % span);
  }

  bool bernoulli(double p) { return uniform01() < p; }

  std::int64_t poisson(double mean) {
    std::int64_t total = 0;
    while (mean > 60.0) {  // additivity keeps the Knuth product in range
      total += poisson_small(60.0);
      mean -= 60.0;
    }
    if (mean > 0.0) total += poisson_small(mean);
    return total;
  }

  double normal() {
    // Polar method, one variate per call.
    double u, v, s;
    do {
      u = 2.0 * uniform01() - 1.0;
      v = 2.0 * uniform01() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    return u * std::sqrt(-2.0 * std::log(s) / s);
  }

  // Marsaglia-Tsang, shape > 0, unit scale.
  double gamma(double shape) {
    if (shape < 1.0) {
      const double g = gamma(shape + 1.0);
      return g * std::pow(uniform01_nonzero(), 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform01_nonzero();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  double beta(double a, double b) {
    const double x = gamma(a);
    const double y = gamma(b);
    return x / (x + y);
  }

 private:
  double uniform01_nonzero() {
    double u;
    do {
      u = uniform01();
    } while (u == 0.0);
    return u;
  }

  std::int64_t poisson_small(double mean) {
    const double threshold = std::exp(-mean);
    std::int64_t k = 0;
    double p = 1.0;
    do {
      ++k;
      p *= uniform01();
    } while (p > threshold);
    return k - 1;
  }

  std::mt19937_64 eng_;
};

inline Stream make_stream(std::uint64_t root_seed, std::uint32_t replication, StreamKind kind) {
  std::seed_seq seq{static_cast<std::uint32_t>(root_seed & 0xffffffffu),
                    static_cast<std::uint32_t>(root_seed >> 32), replication,
                    static_cast<std::uint32_t>(kind)};
  return Stream(seq);
}

}  // namespace c2mabv::rng
