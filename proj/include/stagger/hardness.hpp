#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "stagger/budgets.hpp"
#include "stagger/instance.hpp"
#include "stagger/rng.hpp"

namespace stagger {

// n unit-quantity items whose intervals are the n smallest distinct primes
// >= n; the cycle length grows like n^n while every shift vector shares the
// same peak structure.
Instance gen_sample_complexity(std::int64_t n, const Budgets& budgets = Budgets{});

struct SamplingEstimate {
  Rat estimate;  // max sampled level
  long exceed_count = 0;
  Rat exceed_fraction;
  std::vector<Rat> levels;  // per sample, in draw order
};

// Peak estimate from m_samples uniform times in [0, Lambda), drawn as
// arbitrary-precision residues and reduced per item, so the timeline is
// never materialized. exceed_* count samples with level >= threshold.
SamplingEstimate sampling_estimate(const Instance& instance, const ShiftVector& shifts,
                                   long m_samples, const Rat& threshold, RngStream& rng,
                                   std::vector<std::vector<double>>* per_item_levels = nullptr);

// Subsets of [q^2] of size q, any two meeting in at most r-1 elements:
// graphs {(x, f(x))} of the first `count` polynomials of degree < r over
// F_q, flattened via (x, y) -> x*q + y.
struct SparseFamily {
  std::int64_t q;
  long r;
  std::vector<std::vector<long>> subsets;  // 0-based elements of [q^2]
};

SparseFamily sparse_family(std::int64_t q, long r, long count);

// Instance whose intervals are products of q distinct primes and overflow
// any fixed-width type; items keep lists of indices into a shared prime
// pool instead of materialized intervals.
struct FactoredInstance {
  std::vector<std::int64_t> primes;
  std::vector<std::vector<long>> items;  // per item: prime indices, H_i = 1

  BigInt interval(std::size_t i) const;
  BigInt cycle_length() const;  // product of all primes in use
  std::size_t size() const { return items.size(); }
};

SamplingEstimate sampling_estimate(const FactoredInstance& instance,
                                   const std::vector<BigInt>& shifts, long m_samples,
                                   const Rat& threshold, RngStream& rng);

struct GroupSyncInstance {
  FactoredInstance instance;
  SparseFamily family;
  std::vector<std::int64_t> primes;  // p_1..p_K in [K, 2K ln K]
};

// One item per family subset, with interval prod_{k in S} p_k. Without the
// count override the family size ceil(12 K ln^2 K) must fit below q^3,
// which no desk-scale q satisfies; the override enables structural study.
GroupSyncInstance gen_groupsync(std::int64_t q, std::optional<long> count_override,
                                const Budgets& budgets = Budgets{});

// Moduli n_l, each owning a prime p_l that divides no other modulus, and
// target shifts tau_l.
struct UniqueDivisorSystem {
  std::vector<std::int64_t> p;
  std::vector<BigInt> n;
  std::vector<BigInt> tau;
};

// Smallest-witness time t with (t - tau_l) mod n_l in [0, n_l/p_l^alpha_l - 1]
// for every l, where alpha_l is the exponent of p_l in n_l. Built from
// per-l residues and one CRT solve; never scans.
BigInt small_remainders(const UniqueDivisorSystem& system);

struct ProbeResult {
  BigInt t;
  Rat level;  // summed level of the probed items at t
};

// For each probed item, picks a prime private to it within the probe set,
// aligns all items via small_remainders, and reports the joint level,
// which is at least sum_S (1 - 1/p_S).
ProbeResult subset_gap_probe(const GroupSyncInstance& gs,
                             const std::vector<std::size_t>& subset,
                             const std::vector<BigInt>& shifts);

}  // namespace stagger
