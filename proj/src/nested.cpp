#include "stagger/nested.hpp"

#include <algorithm>
#include <limits>

#include "stagger/errors.hpp"
#include "stagger/interval_ptas.hpp"

namespace stagger {

bool is_nested(const Instance& instance) {
  std::vector<std::int64_t> ts;
  for (const Item& it : instance.items()) ts.push_back(it.interval);
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  for (std::size_t i = 1; i < ts.size(); ++i)
    if (ts[i] % ts[i - 1] != 0) return false;
  return true;
}

Rat effective_eps(const Rat& eps) {
  if (eps <= 0 || eps >= 1) throw InputError("effective_eps: eps must be in (0,1)");
  BigInt b = rat_ceil(Rat(1) / eps);
  if (b < 2) b = 2;
  return make_rat(BigInt(1), b);
}

Instance continuous_to_discrete(const Instance& instance, const Rat& eps) {
  if (instance.mode() != Mode::Continuous)
    throw InputError("continuous_to_discrete: Continuous mode required");
  std::int64_t b = rat_ceil(Rat(1) / eps).get_si();
  std::vector<Item> items;
  for (const Item& it : instance.items()) {
    if (it.interval > std::numeric_limits<std::int64_t>::max() / b)
      throw InputError("continuous_to_discrete: scaled interval overflows 64 bits");
    items.push_back(Item{it.interval * b, it.quantity});
  }
  return Instance(std::move(items), Mode::Discrete);
}

WellSeparatedPartition well_separated(const Instance& instance, const Rat& eps) {
  if (instance.mode() != Mode::Discrete)
    throw InputError("well_separated: Discrete mode required");
  Rat e = effective_eps(eps);
  long b = rat_floor(Rat(1) / e).get_si();

  WellSeparatedPartition out;
  long q_max = 1;
  for (std::size_t i = 0; i < instance.size(); ++i) {
    BigInt bound = b;
    long q = 1;
    while (bound < instance.item(i).interval) {
      bound *= b;
      ++q;
    }
    out.bin_of.push_back(q);
    q_max = std::max(q_max, q);
  }

  std::optional<BigInt> best_residual;
  for (long xi = 0; xi < b; ++xi) {
    std::vector<std::vector<std::size_t>> blocks;
    std::vector<std::size_t> residual;
    std::vector<std::size_t> current;
    BigInt h_residual = 0;
    for (long q = 1; q <= q_max; ++q) {
      bool marked = (q % b) == (xi % b);
      if (marked) {
        if (!current.empty()) blocks.push_back(std::move(current));
        current.clear();
      }
      for (std::size_t i = 0; i < instance.size(); ++i) {
        if (out.bin_of[i] != q) continue;
        if (marked) {
          residual.push_back(i);
          h_residual += static_cast<long>(instance.item(i).quantity);
        } else {
          current.push_back(i);
        }
      }
    }
    if (!current.empty()) blocks.push_back(std::move(current));
    if (!best_residual || h_residual < *best_residual) {
      best_residual = h_residual;
      out.blocks = std::move(blocks);
      out.residual = std::move(residual);
      out.xi = xi;
    }
  }
  return out;
}

AdditivityReport near_additivity_check(const Instance& instance,
                                       const WellSeparatedPartition& partition,
                                       const Rat& eps, const Budgets& budgets) {
  std::vector<std::size_t> all;
  Rat rhs(0);
  for (const auto& block : partition.blocks) {
    all.insert(all.end(), block.begin(), block.end());
    rhs += brute_optimum(instance.restrict_to(block), budgets).value;
  }
  std::sort(all.begin(), all.end());
  Rat lhs = brute_optimum(instance.restrict_to(all), budgets).value;
  return AdditivityReport{lhs, rhs, lhs >= (Rat(1) - 2 * eps) * rhs};
}

SchemeResult nested_solve(const Instance& instance, const Rat& eps,
                          const Budgets& budgets, NestedReport* report) {
  if (!is_nested(instance)) throw InputError("nested_solve: intervals are not nested");

  if (instance.mode() == Mode::Continuous) {
    Instance scaled = continuous_to_discrete(instance, eps);
    SchemeResult inner = nested_solve(scaled, eps, budgets, report);
    std::int64_t b = rat_ceil(Rat(1) / eps).get_si();
    std::vector<Rat> shifts;
    for (const Rat& s : inner.shifts) shifts.push_back(s / static_cast<long>(b));
    ShiftVector sv(instance, shifts);
    PeakResult pk = peak_events(instance, sv, budgets);
    return SchemeResult{sv.shifts(), pk};
  }

  NestedReport rep;
  rep.eps_effective = effective_eps(eps);
  WellSeparatedPartition partition = well_separated(instance, eps);
  rep.xi = partition.xi;
  rep.h_residual = 0;
  for (std::size_t i : partition.residual)
    rep.h_residual += static_cast<long>(instance.item(i).quantity);

  std::vector<Rat> shifts(instance.size(), Rat(0));  // residual keeps zero
  for (const auto& block : partition.blocks) {
    rep.block_sizes.push_back(block.size());
    SchemeResult sub = interval_ptas_solve(instance.restrict_to(block), eps, budgets);
    rep.block_peaks.push_back(sub.peak.value);
    for (std::size_t j = 0; j < block.size(); ++j) shifts[block[j]] = sub.shifts[j];
  }

  ShiftVector sv(instance, shifts);
  PeakResult pk = instance.cycle_length() <= budgets.scan ? peak_scan(instance, sv, budgets)
                                                          : peak_ip(instance, sv, budgets);
  if (report) *report = rep;
  return SchemeResult{sv.shifts(), pk};
}

}  // namespace stagger
