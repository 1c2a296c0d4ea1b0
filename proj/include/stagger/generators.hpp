#pragma once

#include <cstdint>
#include <vector>

#include "stagger/instance.hpp"
#include "stagger/rng.hpp"

namespace stagger {

// Uniform intervals in [1, t_max] and quantities in [1, h_max].
Instance gen_random(RngStream& rng, std::size_t n, std::int64_t t_max,
                    std::int64_t h_max, Mode mode);

// Like gen_random, but resamples until the cycle length is at most
// lambda_cap (caller guarantees feasibility of the cap).
Instance gen_random_capped(RngStream& rng, std::size_t n, std::int64_t t_max,
                           std::int64_t h_max, Mode mode, std::int64_t lambda_cap);

// Intervals drawn from a divisibility chain, so the result is nested.
Instance gen_nested(RngStream& rng, std::size_t n,
                    const std::vector<std::int64_t>& chain, std::int64_t h_max);

// Pairwise coprime intervals in [2, t_max], Continuous mode. Throws when
// t_max admits fewer than n pairwise coprime values.
Instance gen_coprime(RngStream& rng, std::size_t n, std::int64_t t_max,
                     std::int64_t h_max);

}  // namespace stagger
