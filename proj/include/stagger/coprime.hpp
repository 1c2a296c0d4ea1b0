#pragma once

#include <cstdint>
#include <vector>

#include "stagger/budgets.hpp"
#include "stagger/instance.hpp"
#include "stagger/lp_rounding.hpp"
#include "stagger/peak.hpp"

namespace stagger {

// Tower values Psi_0 = 1, Psi_1 = 1/eps (after the integrality rounding of
// effective_eps), Psi_m = 4^Psi_{m-1}. Computation stops once a value
// exceeds max_bits binary digits; callers treat missing entries as larger
// than every interval.
struct PsiSequence {
  std::vector<BigInt> values;
  bool saturated = false;
};

PsiSequence psi_sequence(const Rat& eps, int upto, long max_bits = 1 << 20);

// Items binned by Psi windows [Psi_{m-1}, Psi_m); m_hat is the smallest
// index in [2, 1/eps + 1] whose bin carries at most eps * H_Sigma, and the
// item set splits into the bins below, at, and above m_hat.
struct PsiDecomposition {
  PsiSequence psi;
  long m_hat = 0;
  std::vector<std::size_t> s_minus, s_hat, s_plus;
};

PsiDecomposition coprime_decompose(const Instance& instance, const Rat& eps);

// Validates that all distinct intervals are pairwise coprime; throws an
// input error naming the first offending pair otherwise.
void validate_coprime(const Instance& instance);

// The alignment time t solving t = ceil(tau_i) (mod T_i) for all i; the
// level there is at least (1 - 1/T_min) * H_Sigma.
struct WitnessResult {
  BigInt t;
  Rat level;
};

WitnessResult coprime_lb_witness(const Instance& instance, const ShiftVector& shifts);

struct CoprimeReport {
  long m_hat = 0;
  std::size_t n_minus = 0, n_hat = 0, n_plus = 0;
  bool saturated = false;  // Psi tower stopped before upto
  Rat lower_bound;         // max(H_Sigma/2, (1 - 1/T_min) H_Sigma)
};

// Full scheme for Continuous pairwise-coprime instances: short intervals
// solved through the discrete scaling + interval scheme, all other items
// at shift zero, peak evaluated exactly over the order epochs.
SchemeResult coprime_solve(const Instance& instance, const Rat& eps,
                           const Budgets& budgets = Budgets{},
                           CoprimeReport* report = nullptr);

}  // namespace stagger
