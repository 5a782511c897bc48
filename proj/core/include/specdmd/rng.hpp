#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace specdmd {

/// splitmix64 step; used to spread user seeds and derive per-stream seeds.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Deterministic random source: mt19937_64 with explicit (platform-stable)
/// uniform and Box-Muller normal transforms.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(spread(seed)) {}

  /// Independent stream for (master, stream_index), e.g. one per bagging
  /// trial, so results do not depend on trial execution order.
  static Rng derive(std::uint64_t master, std::uint64_t stream) {
    std::uint64_t s = master;
    std::uint64_t a = splitmix64_next(s);
    s = a ^ stream;
    return Rng(splitmix64_next(s));
  }

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, bound); bound >= 1.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % bound;
    std::uint64_t x;
    do {
      x = gen_();
    } while (x >= limit);
    return x % bound;
  }

  /// Standard normal via Box-Muller (pairs cached).
  double normal() {
    if (have_cache_) {
      have_cache_ = false;
      return cache_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double rad = std::sqrt(-2.0 * std::log(u1));
    const double ang = 2.0 * 3.14159265358979323846 * u2;
    cache_ = rad * std::sin(ang);
    have_cache_ = true;
    return rad * std::cos(ang);
  }

private:
  static std::uint64_t spread(std::uint64_t seed) {
    std::uint64_t s = seed;
    return splitmix64_next(s);
  }

  std::mt19937_64 gen_;
  double cache_ = 0.0;
  bool have_cache_ = false;
};

}  // namespace specdmd
