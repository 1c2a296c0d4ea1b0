#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "stagger/budgets.hpp"
#include "stagger/instance.hpp"
#include "stagger/peak.hpp"
#include "stagger/rng.hpp"
#include "stagger/simplex.hpp"

namespace stagger {

// Per-item allowed integer shifts, normalized into [0, T_i). Items with
// T_i <= 1/eps keep every residue; larger items keep the floors of the
// multiples j*eps*T_i for j = 1..floor(1/eps) plus T_i (which folds to 0).
struct DiscretizationSet {
  std::vector<std::vector<std::int64_t>> offsets;
  std::vector<bool> large;
};

DiscretizationSet build_discretization(const Instance& instance, const Rat& eps);

// Geometric grid (1+eps)^j * H_Sigma/2 for j = 0..ceil(log_{1+eps} 2)+1,
// covering [H_Sigma/2, (1+eps) H_Sigma].
std::vector<Rat> opt_estimate_grid(const Instance& instance, const Rat& eps);

// Quantity threshold separating heavy from light items:
// delta = eps^3 / (36 ln(2 Lambda)), heavy when H_i >= delta * H_Sigma.
Rat heavy_delta(const Instance& instance, const Rat& eps);

struct HeavySelection {
  std::vector<std::size_t> heavy;  // ascending item ids
  Rat delta;
  bool capped = false;  // true when the guess product forced a cap on the
                        // ceil(1/eps) largest-quantity items
};

HeavySelection select_heavy(const Instance& instance, const DiscretizationSet& disc,
                            const Rat& eps, const Budgets& budgets = Budgets{});

// Number of heavy shift assignments, prod over heavy items of |D_i|.
BigInt heavy_guess_count(const DiscretizationSet& disc, const HeavySelection& sel);

struct GuessState {
  Rat opt_estimate;
  std::vector<std::size_t> heavy;
  std::vector<std::int64_t> heavy_shifts;  // parallel to heavy
};

// Streams the cartesian product of heavy discretization sets through fn,
// in odometer order (last heavy item fastest).
void enumerate_heavy_guesses(const DiscretizationSet& disc, const HeavySelection& sel,
                             const std::function<void(const std::vector<std::int64_t>&)>& fn);

// Feasibility program: one variable per (item, allowed shift), assignment
// rows summing each item's block to 1, pin rows for heavy items, and one
// level row per integer time t in [0, Lambda) bounding the fractional level
// by the current peak estimate. Level rows are generated on demand.
struct FeasibilityLp {
  const Instance* instance;
  std::vector<std::pair<std::size_t, std::int64_t>> vars;  // (item, shift)
  std::vector<std::vector<std::size_t>> blocks;            // per-item var ids
  GuessState guess;
  BigInt lambda;
};

FeasibilityLp build_lp(const Instance& instance, const DiscretizationSet& disc,
                       const GuessState& guess, const Budgets& budgets = Budgets{});

struct FractionalAssignment {
  bool feasible = false;
  std::vector<Rat> x;  // parallel to FeasibilityLp::vars, blocks sum to 1
};

// Row-generation solve: repeatedly solves the LP restricted to the level
// rows found violated so far, locating the next violation by an exact
// incremental sweep of the fractional level over [0, Lambda).
FractionalAssignment solve_feasibility(const FeasibilityLp& lp,
                                       const Budgets& budgets = Budgets{});

// Independent categorical draw per item block; pinned items deterministic.
ShiftVector round_solution(const FeasibilityLp& lp, const FractionalAssignment& frac,
                           RngStream& rng);

struct LpRoundingReport {
  BigInt guess_count = 0;
  bool heavy_capped = false;
  long lp_feasible = 0;
  long lp_infeasible = 0;
};

struct SchemeResult {
  std::vector<Rat> shifts;
  PeakResult peak;
};

// Full scheme: for every (peak estimate, heavy assignment) guess, solves
// the feasibility program, rounds `repeats` times, evaluates each candidate
// exactly, and returns the best (smallest peak, then lexicographically
// smallest shifts). Deterministic given seed.
SchemeResult lp_rounding_solve(const Instance& instance, const Rat& eps,
                               std::uint64_t seed, int repeats,
                               const Budgets& budgets = Budgets{},
                               LpRoundingReport* report = nullptr);

// Exhaustive search over the full discretization product, used as the
// reference for how much the restriction itself can lose.
OptimumResult restricted_optimum(const Instance& instance, const Rat& eps,
                                 const Budgets& budgets = Budgets{});

}  // namespace stagger
