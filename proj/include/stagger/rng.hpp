#pragma once

#include <cstdint>

#include "stagger/rational.hpp"

namespace stagger {

// Seedable, splittable pseudorandom stream (splitmix64 core). Every
// randomized operation takes one of these explicitly, so identical
// (seed, call sequence) pairs reproduce identical results on any platform.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : seed_(seed), state_(seed) {}

  // Derives an independent substream keyed by `key`. Depends only on the
  // seed and the key, not on how many values this stream has produced.
  RngStream split(std::uint64_t key) const;

  std::uint64_t next_u64();

  // Unbiased draw from {0, ..., bound-1}; bound >= 1.
  std::uint64_t below(std::uint64_t bound);
  BigInt below_big(const BigInt& bound);

  // Dyadic rational uniform on [0, 1) with 53 random bits; exact, so
  // comparisons against rational CDFs need no tolerance.
  Rat next_unit();

 private:
  std::uint64_t seed_;
  std::uint64_t state_;
};

}  // namespace stagger
