#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace mermin {

// splitmix64 finalizer; used for seed mixing and child-stream derivation.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Deterministic seed for child stream k of a master seed. Restart k of the
// optimizer, setting k of a shot plan etc. all derive their streams this way,
// so runs are reproducible regardless of execution order.
constexpr std::uint64_t child_seed(std::uint64_t master, std::uint64_t k) {
  return mix64(master ^ mix64(k + 1));
}

// Reproducible random stream.
//
// mt19937_64 is fully specified by the standard; the std::*_distribution
// classes are not, so variates are generated from raw 64-bit draws:
//   uniform():  top 53 bits of one draw scaled to [0,1)
//   gaussian(): Box-Muller on two uniforms, second value cached
// The stream for a given seed is therefore identical on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(mix64(seed)) {}

  std::uint64_t bits() { return engine_(); }

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u = 1.0 - uniform();  // (0,1], keeps log finite
    const double v = uniform();
    const double r = std::sqrt(-2.0 * std::log(u));
    spare_ = r * std::sin(2.0 * kPi * v);
    has_spare_ = true;
    return r * std::cos(2.0 * kPi * v);
  }

 private:
  static constexpr double kPi = 3.14159265358979323846;
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace mermin
