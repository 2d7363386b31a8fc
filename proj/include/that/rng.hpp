#pragma once

#include <cmath>
#include <cstdint>

namespace that {

/// Deterministic splitmix64 generator with explicit samplers, so streams are
/// reproducible bit-for-bit regardless of the standard library in use.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  /// Seed for substream `index` of a 64-bit master seed.
  static std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index) {
    return mix(master + (index + 1) * kGolden);
  }

  std::uint64_t next_u64() {
    state_ += kGolden;
    return mix(state_);
  }

  /// [0, 1)
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// (0, 1]
  double uniform01_open_low() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

  /// [lo, hi)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  bool bernoulli(double p) { return uniform01() < p; }

  double normal(double mean, double stddev) {
    if (!has_spare_) {
      double u1 = uniform01_open_low();
      double u2 = uniform01();
      double r = std::sqrt(-2.0 * std::log(u1));
      double a = 2.0 * 3.14159265358979323846 * u2;
      spare_ = r * std::sin(a);
      has_spare_ = true;
      return mean + stddev * r * std::cos(a);
    }
    has_spare_ = false;
    return mean + stddev * spare_;
  }

  /// Knuth's product method; fine for the small lambdas used here.
  int poisson(double lambda) {
    double limit = std::exp(-lambda);
    double p = 1.0;
    int k = 0;
    do {
      ++k;
      p *= uniform01();
    } while (p > limit);
    return k - 1;
  }

 private:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
  double spare_ = 0;
  bool has_spare_ = false;
};

}  // namespace that
