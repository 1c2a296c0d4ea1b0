#include "stagger/numtheory.hpp"

#include <cmath>
#include <string>

#include "stagger/errors.hpp"

namespace stagger {

BigInt crt_solve(const std::vector<Congruence>& system) {
  BigInt t = 0, m = 1;
  for (const auto& c : system) {
    if (c.modulus < 1) throw InputError("crt_solve: modulus must be >= 1");
    BigInt g = gcd(m, c.modulus);
    if (g != 1)
      throw InputError("crt_solve: moduli not pairwise coprime (gcd " + g.get_str() + ")");
    // Merge t (mod m) with c: t + m*k == residue (mod modulus).
    BigInt r;
    mpz_fdiv_r(r.get_mpz_t(), c.residue.get_mpz_t(), c.modulus.get_mpz_t());
    if (c.modulus == 1) continue;
    BigInt inv;
    if (mpz_invert(inv.get_mpz_t(), m.get_mpz_t(), c.modulus.get_mpz_t()) == 0)
      throw InputError("crt_solve: modulus not invertible");
    BigInt k = ((r - t) * inv) % c.modulus;
    if (k < 0) k += c.modulus;
    t += m * k;
    m *= c.modulus;
  }
  return t;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  BigInt z(static_cast<long>(n));
  return mpz_probab_prime_p(z.get_mpz_t(), 30) != 0;  // deterministic below 2^64
}

std::vector<std::int64_t> primes_in_range(std::int64_t lo, std::int64_t hi,
                                          const Budgets& budgets) {
  if (lo < 2 || lo > hi) throw InputError("primes_in_range: need 2 <= lo <= hi");
  if (hi > (std::int64_t(1) << 40)) throw InputError("primes_in_range: hi exceeds 2^40");
  std::int64_t span = hi - lo + 1;
  if (span > budgets.sieve_span)
    throw ResourceError("primes_in_range: span " + std::to_string(span) +
                        " exceeds sieve budget " + std::to_string(budgets.sieve_span));

  // Base primes up to sqrt(hi).
  std::int64_t root = static_cast<std::int64_t>(std::sqrt(static_cast<double>(hi))) + 1;
  std::vector<bool> base(root + 1, true);
  for (std::int64_t p = 2; p * p <= root; ++p)
    if (base[p])
      for (std::int64_t q = p * p; q <= root; q += p) base[q] = false;

  std::vector<bool> seg(span, true);
  for (std::int64_t p = 2; p <= root; ++p) {
    if (!base[p]) continue;
    std::int64_t start = std::max(p * p, ((lo + p - 1) / p) * p);
    for (std::int64_t q = start; q <= hi; q += p) seg[q - lo] = false;
  }
  std::vector<std::int64_t> out;
  for (std::int64_t v = lo; v <= hi; ++v)
    if (v >= 2 && seg[v - lo]) out.push_back(v);
  return out;
}

BigInt lcm_of(const std::vector<std::int64_t>& values) {
  BigInt acc = 1;
  for (std::int64_t v : values) acc = lcm(acc, BigInt(static_cast<long>(v)));
  return acc;
}

}  // namespace stagger
