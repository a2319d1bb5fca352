#pragma once

#include <cstdint>
#include <random>

namespace eigentree {

// Seedable generator with platform-independent output. mt19937_64 has a
// fully specified sequence; the uniform doubles below avoid
// std::uniform_real_distribution, whose rounding is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform in (0, 1): rejects exact zero so log/1-x densities stay finite.
  double next_open01() {
    for (;;) {
      double u = next_double();
      if (u > 0.0) return u;
    }
  }

  // Uniform integer in [0, bound) by rejection.
  std::uint64_t next_below(std::uint64_t bound) {
    std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    for (;;) {
      std::uint64_t x = engine_();
      if (x < limit) return x % bound;
    }
  }

 private:
  std::mt19937_64 engine_;
};

// Deterministic per-shard seed derivation (splitmix64 step).
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t shard) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (shard + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace eigentree
