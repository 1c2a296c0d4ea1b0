#pragma once

#include "stagger/instance.hpp"
#include "stagger/rng.hpp"

namespace stagger {

// Inventory level of a single item at time t under shift `shift`. Order
// epochs extend over all of Z, so t may be negative. Exact: at an epoch the
// level is H_i, then it drains linearly to (but never reaching) 0.
Rat item_level(const Item& item, const Rat& shift, const Rat& t);

// Sum of item levels at time t.
Rat total_level(const Instance& instance, const ShiftVector& shifts, const Rat& t);

// Universal lower bound on the mode's optimum:
// Discrete:   (1/2) * sum H_i * (1 + 1/T_i)
// Continuous: H_Sigma / 2
Rat average_space_bound(const Instance& instance);

// Independent uniform draw from {0, ..., T_i - 1} per item.
ShiftVector random_shift_vector(const Instance& instance, RngStream& rng);

// Decides ln(Lambda) < (eps^2 / 6) * H_Sigma / H_max (strict), reporting
// both sides. The comparison is certified: directed-rounding logarithms are
// refined until the interval separates from the rational threshold.
struct RegimeReport {
  bool holds;
  BigInt lambda;
  double ln_lambda;  // reporting only; the decision is certified
  Rat rhs;
};
RegimeReport random_regime_check(const Instance& instance, const Rat& eps);

}  // namespace stagger
