#pragma once

#include <cstdint>
#include <random>

namespace netrepo {

// Seeded 64-bit generator. The engine is std::mt19937_64, whose output
// sequence is fixed by the C++ standard; the conversions below are written
// out by hand because std:: distributions differ between standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform double in (0, 1].
  double uniform_open_zero() { return 1.0 - uniform(); }

  // Uniform integer in [0, bound). bound must be > 0. Rejection sampling
  // removes modulo bias.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = (~std::uint64_t{0}) - ((~std::uint64_t{0}) % bound + 1) % bound;
    std::uint64_t x;
    do {
      x = next();
    } while (x > limit);
    return x % bound;
  }

 private:
  std::mt19937_64 engine_;
};

// Derives an independent stream seed from a base seed and a stream tag.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace netrepo
