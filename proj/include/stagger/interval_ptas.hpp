#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "stagger/budgets.hpp"
#include "stagger/instance.hpp"
#include "stagger/lp_rounding.hpp"
#include "stagger/peak.hpp"

namespace stagger {

// Items grouped by distinct interval value, with a discretization shared by
// each class (all members have the same T).
struct IntervalClasses {
  std::vector<std::int64_t> intervals;             // ascending distinct T values
  std::vector<std::vector<std::size_t>> members;   // item ids per class
  std::vector<std::vector<std::int64_t>> offsets;  // allowed shifts per class
};

IntervalClasses group_by_interval(const Instance& instance, const Rat& eps);

// Guessed per-(class, shift) quantity table. Entries are multiples[k][j]
// times unit, where unit = (eps^2 / K) * H_Sigma and j indexes the class's
// offsets. Valid tables keep each class's total within
// [H(S_k), H(S_k) + |D_k| * unit].
struct QuantityGuess {
  std::vector<std::vector<long>> multiples;
  Rat unit;
};

BigInt count_quantity_guesses(const Instance& instance, const IntervalClasses& classes,
                              const Rat& eps);

void enumerate_quantity_guesses(const Instance& instance, const IntervalClasses& classes,
                                const Rat& eps, const Budgets& budgets,
                                const std::function<void(const QuantityGuess&)>& fn);

// Assignment of jobs to machines running at the given speeds, minimizing
// the makespan max_m (assigned quantity / speed_m). Exact branch-and-bound
// up to 15 jobs, longest-processing-time order beyond that. Machines with
// zero speed receive nothing.
struct BalanceResult {
  std::vector<std::vector<std::size_t>> groups;  // job ids per machine
  Rat makespan;
  bool exact;
};

std::optional<BalanceResult> balance_partition(const std::vector<std::int64_t>& job_quantities,
                                               const std::vector<Rat>& speeds, const Rat& eps);

// One aggregated item per nonempty (class, shift) group: interval T_(k),
// quantity H(group), shift tau. Peak of the pair equals the peak of the
// expanded per-item vector on the original instance.
struct SuperitemPair {
  Instance instance;
  ShiftVector shifts;
};

SuperitemPair superitem_instance(const Instance& original, const IntervalClasses& classes,
                                 const std::vector<std::vector<std::vector<std::size_t>>>& groups);

struct IntervalPtasReport {
  BigInt guess_count = 0;
  long rejected = 0;  // guesses with no balanced partition within 1 + eps
  long evaluated = 0;
};

// Full scheme: enumerate quantity guesses, balance each class against the
// guessed per-shift quantities (rejecting the guess when the makespan
// exceeds 1 + eps), expand surviving partitions to shift vectors, evaluate
// exactly, return the best. Deterministic.
SchemeResult interval_ptas_solve(const Instance& instance, const Rat& eps,
                                 const Budgets& budgets = Budgets{},
                                 IntervalPtasReport* report = nullptr);

}  // namespace stagger
