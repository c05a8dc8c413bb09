// Seeded random number generation with reproducible per-stream derivation.
//
// The engine is std::mt19937_64 (fully specified by the standard, so runs
// are reproducible across platforms); uniform and normal variates are
// generated from raw 64-bit draws rather than std::*_distribution, whose
// output is implementation-defined.
#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace gcoda {

// splitmix64, used to expand a user seed into engine seeds and to derive
// independent sub-streams as (seed, stream index) mixes.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t s = seed;
    engine_.seed(splitmix64(s));
  }

  // Independent deterministic stream for (seed, index); parallel consumers
  // each take their own stream so results do not depend on scheduling.
  static Rng stream(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t s = seed;
    std::uint64_t a = splitmix64(s);
    s = a ^ (index + 0x9e3779b97f4a7c15ULL * (index + 1));
    return Rng(splitmix64(s));
  }

  std::uint64_t bits() { return engine_(); }

  // Uniform on [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(bits() >> 11) * 0x1.0p-53; }

  // Uniform on {0, ..., n-1} by rejection; n > 0.
  int uniform_int(int n) {
    const std::uint64_t un = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % un;
    std::uint64_t v;
    do {
      v = bits();
    } while (v >= limit);
    return static_cast<int>(v % un);
  }

  // Standard normal via Box-Muller; the spare value is cached.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1, u2;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  // Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (int i = static_cast<int>(v.size()) - 1; i > 0; --i) {
      std::swap(v[static_cast<std::size_t>(i)],
                v[static_cast<std::size_t>(uniform_int(i + 1))]);
    }
  }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace gcoda
