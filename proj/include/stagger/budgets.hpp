#pragma once

#include <cstdint>

namespace stagger {

// Resource limits for the exact engines. Exceeding any of them raises
// ResourceError naming the offending quantity.
struct Budgets {
  // peak_scan: maximum cycle length Lambda that may be scanned.
  std::int64_t scan = 10'000'000;
  // peak_events: maximum total number of order epochs in [0, Lambda).
  std::int64_t events = 10'000'000;
  // peak_ip: maximum number of items (IP dimension).
  int ip_dims = 12;
  // brute_optimum: maximum number of enumerated shift vectors.
  std::int64_t brute = 10'000'000;
  // lp_rounding / interval_ptas: maximum number of enumerated guesses.
  std::int64_t guesses = 1'000'000;
  // primes_in_range: maximum sieve span.
  std::int64_t sieve_span = 100'000'000;
  // brute_optimum in Continuous mode: shift grid resolution 1/g.
  std::int64_t continuous_grid = 4;
};

}  // namespace stagger
