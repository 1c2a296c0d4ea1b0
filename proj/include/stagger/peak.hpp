#pragma once

#include <optional>
#include <vector>

#include "stagger/budgets.hpp"
#include "stagger/core.hpp"
#include "stagger/instance.hpp"

namespace stagger {

enum class PeakEngine { Scan, Events, IntegerProgram, Exhaustive };

struct PeakResult {
  Rat value;
  Rat argmax_time;
  PeakEngine engine;
};

// Exact peak over all integer t in [0, Lambda); argmax is the smallest
// maximizing t. Discrete mode; Lambda <= budgets.scan.
PeakResult peak_scan(const Instance& instance, const ShiftVector& shifts,
                     const Budgets& budgets = Budgets{});

// Exact peak over all order epochs in [0, Lambda); works in either mode
// (rational epochs in Continuous mode). In Discrete mode this dominates the
// integer-grid peak, with equality whenever some maximizing integer time is
// an epoch.
PeakResult peak_events(const Instance& instance, const ShiftVector& shifts,
                       const Budgets& budgets = Budgets{});

// Maximization model over a peak time p and per-item order indices x_i:
//   max  sum_i H_i * (1 - (p - (tau_i + x_i T_i)) / T_i)
//   s.t. tau_i + x_i T_i <= p,  0 <= p <= Lambda,  p, x integer.
// The feasibility form scales the objective by Lambda and thresholds it
// at an integer psi.
struct IpModel {
  std::vector<Item> items;
  std::vector<std::int64_t> taus;  // normalized into [0, T_i)
  BigInt lambda;
  BigInt h_sigma;
};

IpModel build_ip_model(const Instance& instance, const ShiftVector& shifts,
                       const Budgets& budgets = Budgets{});

struct IpWitness {
  BigInt p;
  std::vector<BigInt> x;
};

// Decides whether some (p, x) in [p_lo, p_hi] attains scaled objective
// >= psi; exact interval branch-and-bound on p (for fixed p the optimal
// x_i is floor((p - tau_i) / T_i), so the search collapses to p alone).
std::optional<IpWitness> ip_feasible(const IpModel& model, const BigInt& psi);
std::optional<IpWitness> ip_feasible(const IpModel& model, const BigInt& psi,
                                     const BigInt& p_lo, const BigInt& p_hi);

// Exact peak through the integer-program route: binary search on psi over
// [ceil(Lambda H_Sigma / 2), Lambda H_Sigma], then a second binary search
// pinning the smallest optimal p.
PeakResult peak_ip(const Instance& instance, const ShiftVector& shifts,
                   const Budgets& budgets = Budgets{});

struct OptimumResult {
  Rat value;
  std::vector<Rat> shifts;
  bool exact;  // false for the Continuous-mode grid heuristic
};

// Ground-truth optimum by exhaustive enumeration of integer shift vectors
// with tau_1 = 0 (translation invariance); ties broken toward the
// lexicographically smallest vector. In Continuous mode the search runs on
// the grid of multiples of 1/budgets.continuous_grid and is flagged inexact.
OptimumResult brute_optimum(const Instance& instance, const Budgets& budgets = Budgets{});

}  // namespace stagger
