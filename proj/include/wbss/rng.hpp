#ifndef WBSS_RNG_HPP
#define WBSS_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>

namespace wbss::rng {

// Counter-based generation: every draw is a pure function of
// (seed, stream, index), so channels and samples can be generated in any
// order and still reproduce bit-identically.

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t mix(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  return splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ index);
}

/// Uniform draw in the open interval (0, 1).
inline double uniform01(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  return (static_cast<double>(mix(seed, stream, index) >> 11) + 0.5) * 0x1.0p-53;
}

/// Standard normal draw (Box-Muller, two sub-draws per index).
inline double gaussian(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  const double u1 = uniform01(seed, stream, 2 * index);
  const double u2 = uniform01(seed, stream, 2 * index + 1);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

/// Unit-variance Laplacian draw (inverse CDF).
inline double laplacian(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  const double u = uniform01(seed, stream, index) - 0.5;
  const double b = 1.0 / std::numbers::sqrt2;  // scale for unit variance
  return (u < 0 ? b : -b) * std::log1p(-2.0 * std::abs(u));
}

/// Derives a per-stage seed from the master seed and a fixed stage label, so
/// changing one stage's consumption never perturbs another stage's stream.
constexpr std::uint64_t stage_seed(std::uint64_t master, std::string_view label) {
  std::uint64_t h = 0xCBF29CE484222325ULL;  // FNV-1a
  for (char c : label) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ULL;
  }
  return splitmix64(master ^ h);
}

/// Deterministic Fisher-Yates state for in-place shuffles; self-contained so
/// shuffles do not depend on standard library distribution internals.
class Shuffler {
 public:
  explicit Shuffler(std::uint64_t seed) : state_(splitmix64(seed ^ 0xA5A5A5A5A5A5A5A5ULL)) {}

  std::uint64_t next() {
    state_ = splitmix64(state_);
    return state_;
  }

  /// Uniform integer in [0, bound) by rejection on the top bits.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t threshold = (~bound + 1) % bound;  // 2^64 mod bound
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  template <typename Container>
  void shuffle(Container& c) {
    for (std::size_t i = c.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(next_below(i));
      std::swap(c[i - 1], c[j]);
    }
  }

 private:
  std::uint64_t state_;
};

}  // namespace wbss::rng

#endif  // WBSS_RNG_HPP
