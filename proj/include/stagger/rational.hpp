#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace stagger {

using BigInt = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(const BigInt& num, const BigInt& den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline Rat make_rat(std::int64_t num, std::int64_t den) {
  return make_rat(BigInt(static_cast<long>(num)), BigInt(static_cast<long>(den)));
}

// Largest integer <= r.
inline BigInt rat_floor(const Rat& r) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  return q;
}

// Smallest integer >= r.
inline BigInt rat_ceil(const Rat& r) {
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  return q;
}

// r reduced into [0, m) by subtracting the right integer multiple of m.
Rat rat_mod(const Rat& r, const Rat& m);

// Accepts "p/q", plain integers, and decimal strings like "0.25".
Rat parse_rat(const std::string& s);

// Canonical form: "p" when the denominator is 1, otherwise "p/q".
std::string rat_to_string(const Rat& r);

}  // namespace stagger
