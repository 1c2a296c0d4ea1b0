#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "stagger/budgets.hpp"
#include "stagger/rational.hpp"

namespace stagger {

// One congruence t == residue (mod modulus).
struct Congruence {
  BigInt residue;
  BigInt modulus;
};

// Unique solution in [0, prod moduli) to a system with pairwise coprime
// moduli. Throws InputError on a non-coprime pair or modulus < 1.
BigInt crt_solve(const std::vector<Congruence>& system);

// All primes in [lo, hi], ascending. 2 <= lo <= hi <= 2^40.
std::vector<std::int64_t> primes_in_range(std::int64_t lo, std::int64_t hi,
                                          const Budgets& budgets = Budgets{});

bool is_prime(std::int64_t n);

BigInt lcm_of(const std::vector<std::int64_t>& values);

}  // namespace stagger
