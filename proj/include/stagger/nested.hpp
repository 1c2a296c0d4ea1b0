#pragma once

#include <cstdint>
#include <vector>

#include "stagger/budgets.hpp"
#include "stagger/instance.hpp"
#include "stagger/lp_rounding.hpp"
#include "stagger/peak.hpp"

namespace stagger {

// true when the sorted distinct intervals each divide the next
bool is_nested(const Instance& instance);

// eps rounded down so 1/eps is an integer (>= 2)
Rat effective_eps(const Rat& eps);

// All intervals multiplied by ceil(1/eps); mode becomes Discrete. Integer
// shift vectors for the result map to shifts/ceil(1/eps) on the original
// with identical peak.
Instance continuous_to_discrete(const Instance& instance, const Rat& eps);

// Ordered blocks of items whose intervals are close together (within
// (1/eps)^(1/eps)) and separated across blocks by a factor >= 1/eps, plus
// a residual carrying at most an eps fraction of the total quantity.
// Built by binning intervals into powers of 1/eps and discarding the bins
// marked by the offset xi; every xi is tried and the one minimizing the
// residual quantity wins (ties toward smaller xi).
struct WellSeparatedPartition {
  std::vector<std::vector<std::size_t>> blocks;  // S_1..S_M, ascending ids
  std::vector<std::size_t> residual;
  long xi = 0;
  std::vector<long> bin_of;  // per item: q with T_i in ((1/eps)^(q-1), (1/eps)^q]
};

WellSeparatedPartition well_separated(const Instance& instance, const Rat& eps);

struct AdditivityReport {
  Rat lhs;  // optimum of the blocks' union
  Rat rhs;  // sum of per-block optima
  bool holds;
};

// Tests lhs >= (1 - 2 eps) * rhs with both sides from brute_optimum.
AdditivityReport near_additivity_check(const Instance& instance,
                                       const WellSeparatedPartition& partition,
                                       const Rat& eps, const Budgets& budgets = Budgets{});

struct NestedReport {
  Rat eps_effective;
  long xi = 0;
  std::vector<std::size_t> block_sizes;
  std::vector<Rat> block_peaks;
  BigInt h_residual;
};

// Full scheme for nested instances in either mode: well-separated
// partition, per-block solve, zero shifts for the residual, glue,
// exact evaluation.
SchemeResult nested_solve(const Instance& instance, const Rat& eps,
                          const Budgets& budgets = Budgets{},
                          NestedReport* report = nullptr);

}  // namespace stagger
