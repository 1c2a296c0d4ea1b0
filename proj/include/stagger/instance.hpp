#pragma once

#include <cstdint>
#include <vector>

#include "stagger/rational.hpp"

namespace stagger {

enum class Mode { Discrete, Continuous };

// One SOSI policy: orders of `quantity` units every `interval` time units.
struct Item {
  std::int64_t interval;  // T_i >= 1
  std::int64_t quantity;  // H_i >= 1
};

// Immutable problem input. Derived totals are computed on construction.
class Instance {
 public:
  Instance(std::vector<Item> items, Mode mode);

  const std::vector<Item>& items() const { return items_; }
  const Item& item(std::size_t i) const { return items_[i]; }
  std::size_t size() const { return items_.size(); }
  Mode mode() const { return mode_; }

  const BigInt& h_sigma() const { return h_sigma_; }
  std::int64_t h_max() const { return h_max_; }
  std::int64_t t_min() const { return t_min_; }
  std::int64_t t_max() const { return t_max_; }

  // Lambda = LCM(T_1, ..., T_n).
  BigInt cycle_length() const;

  Instance restrict_to(const std::vector<std::size_t>& ids) const;
  Instance with_mode(Mode mode) const;

 private:
  std::vector<Item> items_;
  Mode mode_;
  BigInt h_sigma_;
  std::int64_t h_max_;
  std::int64_t t_min_;
  std::int64_t t_max_;
};

// Per-item shifts, normalized into [0, T_i) on construction (tau_i = T_i
// folds to 0: both endpoints induce the same order epochs). Discrete mode
// requires integer entries.
class ShiftVector {
 public:
  ShiftVector(const Instance& instance, std::vector<Rat> shifts);

  static ShiftVector zero(const Instance& instance);

  const std::vector<Rat>& shifts() const { return shifts_; }
  const Rat& operator[](std::size_t i) const { return shifts_[i]; }
  std::size_t size() const { return shifts_.size(); }

  bool operator==(const ShiftVector& other) const { return shifts_ == other.shifts_; }
  bool lex_less(const ShiftVector& other) const;

 private:
  std::vector<Rat> shifts_;
};

}  // namespace stagger
