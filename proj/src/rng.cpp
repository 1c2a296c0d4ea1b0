#include "stagger/rng.hpp"

#include "stagger/errors.hpp"

namespace stagger {

namespace {

std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

RngStream RngStream::split(std::uint64_t key) const {
  return RngStream(mix(seed_ + 0x9e3779b97f4a7c15ULL * (key + 1)));
}

std::uint64_t RngStream::next_u64() {
  state_ += 0x9e3779b97f4a7c15ULL;
  return mix(state_);
}

std::uint64_t RngStream::below(std::uint64_t bound) {
  if (bound == 0) throw InputError("RngStream::below: bound must be >= 1");
  if (bound == 1) return 0;
  // Rejection sampling on the top multiple of bound.
  std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  for (;;) {
    std::uint64_t v = next_u64();
    if (v < limit) return v % bound;
  }
}

BigInt RngStream::below_big(const BigInt& bound) {
  if (bound <= 0) throw InputError("RngStream::below_big: bound must be >= 1");
  if (bound.fits_ulong_p() && bound.get_ui() <= UINT32_MAX) {
    return BigInt(static_cast<unsigned long>(below(bound.get_ui())));
  }
  std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  std::size_t words = (bits + 63) / 64;
  BigInt mask = (BigInt(1) << bits) - 1;
  for (;;) {
    BigInt v = 0;
    for (std::size_t w = 0; w < words; ++w) {
      v <<= 64;
      v += BigInt(static_cast<unsigned long>(next_u64()));
    }
    // Trim to the bit length of bound, then reject out-of-range draws.
    v &= mask;
    if (v < bound) return v;
  }
}

Rat RngStream::next_unit() {
  std::uint64_t v = next_u64() >> 11;  // 53 bits
  return make_rat(BigInt(static_cast<unsigned long>(v)), BigInt(1) << 53);
}

}  // namespace stagger
