#pragma once

#include <cstdint>

#include "charpoly/matrix.hpp"
#include "charpoly/ring.hpp"

namespace charpoly {

/// SplitMix64. Chosen because its output is fully pinned by the seed with
/// no implementation-defined behavior, so seeded verification runs are
/// reproducible across machines; child(i) derives independent streams for
/// per-trial generators.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound) by rejection; bound >= 1.
  std::uint64_t bounded(std::uint64_t bound) {
    const std::uint64_t limit = bound * ((~std::uint64_t{0}) / bound);
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % bound;
  }

  // Uniform in [lo, hi], inclusive.
  long long range(long long lo, long long hi) {
    return lo + static_cast<long long>(bounded(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  SplitMix64 child(std::uint64_t index) const {
    SplitMix64 c(state_ ^ (0xD1B54A32D192ED03ull * (index + 1)));
    c.next();
    return c;
  }

 private:
  std::uint64_t state_;
};

// Entry distributions used by every seeded verification campaign:
// integers uniform in [-9, 9], prime-field residues uniform in [0, p-1],
// rationals with numerator in [-9, 9] and denominator in [1, 9].

inline IntRing::Element random_element(const IntRing& ring, SplitMix64& rng) {
  return ring.from_long(rng.range(-9, 9));
}

inline RatRing::Element random_element(const RatRing&, SplitMix64& rng) {
  mpq_class q(static_cast<long>(rng.range(-9, 9)), static_cast<long>(rng.range(1, 9)));
  q.canonicalize();
  return q;
}

inline ModRing::Element random_element(const ModRing& ring, SplitMix64& rng) {
  return Fp{rng.bounded(ring.modulus()), ring.modulus()};
}

template <RingType R>
Matrix<R> random_matrix(const R& ring, std::size_t n, SplitMix64& rng) {
  Matrix<R> m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m.at(i, j) = random_element(ring, rng);
  return m;
}

}  // namespace charpoly
