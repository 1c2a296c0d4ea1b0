#include "stagger/interval_ptas.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "stagger/errors.hpp"

namespace stagger {

IntervalClasses group_by_interval(const Instance& instance, const Rat& eps) {
  if (instance.mode() != Mode::Discrete)
    throw InputError("group_by_interval: Discrete mode required");
  IntervalClasses classes;
  std::map<std::int64_t, std::vector<std::size_t>> by_interval;
  for (std::size_t i = 0; i < instance.size(); ++i)
    by_interval[instance.item(i).interval].push_back(i);
  DiscretizationSet disc = build_discretization(instance, eps);
  for (const auto& [t, ids] : by_interval) {
    classes.intervals.push_back(t);
    classes.members.push_back(ids);
    classes.offsets.push_back(disc.offsets[ids.front()]);
  }
  return classes;
}

namespace {

struct GuessSpace {
  Rat unit;
  long m_max;
  std::vector<long> sum_lo, sum_hi;  // per-class bounds on sum of multiples
};

GuessSpace guess_space(const Instance& instance, const IntervalClasses& classes,
                       const Rat& eps) {
  if (eps <= 0 || eps >= 1) throw InputError("quantity guesses: eps must be in (0,1)");
  long k = static_cast<long>(classes.intervals.size());
  GuessSpace gs;
  gs.unit = eps * eps / k * Rat(instance.h_sigma());
  gs.m_max = rat_ceil(Rat(k) / (eps * eps)).get_si();
  for (std::size_t c = 0; c < classes.members.size(); ++c) {
    BigInt h_class = 0;
    for (std::size_t i : classes.members[c])
      h_class += static_cast<long>(instance.item(i).quantity);
    Rat ratio = Rat(h_class) / gs.unit;
    gs.sum_lo.push_back(rat_ceil(ratio).get_si());
    gs.sum_hi.push_back(rat_floor(ratio).get_si() +
                        static_cast<long>(classes.offsets[c].size()));
  }
  return gs;
}

// All per-class multiple vectors within the sum window, lexicographic
// order. Prefixes that cannot reach the window any more are pruned, so the
// cost tracks the number of emitted vectors rather than (m_max+1)^width.
std::vector<std::vector<long>> class_vectors(const GuessSpace& gs, std::size_t c,
                                             std::size_t width) {
  std::vector<std::vector<long>> out;
  std::vector<long> m(width, 0);
  auto rec = [&](auto&& self, std::size_t pos, long sum) -> void {
    if (sum > gs.sum_hi[c]) return;
    long slack = static_cast<long>(width - pos) * gs.m_max;
    if (sum + slack < gs.sum_lo[c]) return;
    if (pos == width) {
      if (sum >= gs.sum_lo[c]) out.push_back(m);
      return;
    }
    for (long v = 0; v <= gs.m_max; ++v) {
      m[pos] = v;
      self(self, pos + 1, sum + v);
    }
    m[pos] = 0;
  };
  rec(rec, 0, 0);
  return out;
}

BigInt count_class_vectors(const GuessSpace& gs, std::size_t c, std::size_t width) {
  // DP over positions; dp[s] = number of prefixes with multiple-sum s
  long cap = static_cast<long>(width) * gs.m_max;
  std::vector<BigInt> dp(cap + 1, 0);
  dp[0] = 1;
  for (std::size_t j = 0; j < width; ++j) {
    std::vector<BigInt> next(cap + 1, 0);
    for (long s = 0; s <= cap; ++s) {
      if (dp[s] == 0) continue;
      for (long v = 0; v <= gs.m_max && s + v <= cap; ++v) next[s + v] += dp[s];
    }
    dp.swap(next);
  }
  BigInt total = 0;
  for (long s = std::max(gs.sum_lo[c], 0L); s <= std::min(gs.sum_hi[c], cap); ++s)
    total += dp[s];
  return total;
}

}  // namespace

BigInt count_quantity_guesses(const Instance& instance, const IntervalClasses& classes,
                              const Rat& eps) {
  GuessSpace gs = guess_space(instance, classes, eps);
  BigInt total = 1;
  for (std::size_t c = 0; c < classes.members.size(); ++c)
    total *= count_class_vectors(gs, c, classes.offsets[c].size());
  return total;
}

void enumerate_quantity_guesses(const Instance& instance, const IntervalClasses& classes,
                                const Rat& eps, const Budgets& budgets,
                                const std::function<void(const QuantityGuess&)>& fn) {
  GuessSpace gs = guess_space(instance, classes, eps);
  if (count_quantity_guesses(instance, classes, eps) > budgets.guesses)
    throw ResourceError("enumerate_quantity_guesses: table count exceeds guess budget");
  std::size_t k = classes.members.size();
  std::vector<std::vector<std::vector<long>>> per_class;
  for (std::size_t c = 0; c < k; ++c)
    per_class.push_back(class_vectors(gs, c, classes.offsets[c].size()));

  std::vector<std::size_t> idx(k, 0);
  QuantityGuess guess;
  guess.unit = gs.unit;
  guess.multiples.resize(k);
  for (;;) {
    for (std::size_t c = 0; c < k; ++c) guess.multiples[c] = per_class[c][idx[c]];
    fn(guess);
    std::size_t c = k;
    bool advanced = false;
    while (c > 0) {
      --c;
      if (++idx[c] < per_class[c].size()) {
        advanced = true;
        break;
      }
      idx[c] = 0;
    }
    if (!advanced) break;
  }
}

std::optional<BalanceResult> balance_partition(const std::vector<std::int64_t>& job_quantities,
                                               const std::vector<Rat>& speeds,
                                               const Rat& eps) {
  std::size_t n = job_quantities.size();
  std::vector<std::size_t> machines;
  for (std::size_t m = 0; m < speeds.size(); ++m) {
    if (speeds[m] < 0) throw InputError("balance_partition: negative speed");
    if (speeds[m] > 0) machines.push_back(m);
  }
  if (machines.empty()) {
    if (n == 0) {
      BalanceResult empty;
      empty.groups.assign(speeds.size(), {});
      empty.makespan = 0;
      empty.exact = true;
      return empty;
    }
    return std::nullopt;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return job_quantities[a] > job_quantities[b];
  });

  BalanceResult out;
  out.groups.assign(speeds.size(), {});
  std::vector<Rat> load(speeds.size(), Rat(0));
  auto makespan = [&]() {
    Rat ms(0);
    for (std::size_t m : machines) {
      Rat v = load[m] / speeds[m];
      if (v > ms) ms = v;
    }
    return ms;
  };

  if (n <= 15) {
    std::vector<std::size_t> assign(n), best_assign;
    std::optional<Rat> best;
    auto dfs = [&](auto&& self, std::size_t pos) -> void {
      if (pos == n) {
        Rat ms = makespan();
        if (!best || ms < *best) {
          best = ms;
          best_assign = assign;
        }
        return;
      }
      std::size_t job = order[pos];
      Rat q(static_cast<long>(job_quantities[job]));
      std::vector<Rat> tried_empty_speeds;
      for (std::size_t m : machines) {
        if (load[m] == 0) {
          // identical empty machines of equal speed are interchangeable
          if (std::find(tried_empty_speeds.begin(), tried_empty_speeds.end(), speeds[m]) !=
              tried_empty_speeds.end())
            continue;
          tried_empty_speeds.push_back(speeds[m]);
        }
        Rat t = (load[m] + q) / speeds[m];
        if (best && t >= *best) continue;
        load[m] += q;
        assign[job] = m;
        self(self, pos + 1);
        load[m] -= q;
      }
    };
    dfs(dfs, 0);
    if (!best) return std::nullopt;
    for (std::size_t j = 0; j < n; ++j) out.groups[best_assign[j]].push_back(j);
    out.makespan = *best;
    out.exact = true;
    return out;
  }

  // longest-processing-time heuristic, verified by the caller against the
  // 1 + eps target
  (void)eps;
  for (std::size_t job : order) {
    Rat q(static_cast<long>(job_quantities[job]));
    std::size_t pick = machines.front();
    Rat pick_t = (load[pick] + q) / speeds[pick];
    for (std::size_t m : machines) {
      Rat t = (load[m] + q) / speeds[m];
      if (t < pick_t) {
        pick = m;
        pick_t = t;
      }
    }
    load[pick] += q;
    out.groups[pick].push_back(job);
  }
  for (auto& g : out.groups) std::sort(g.begin(), g.end());
  out.makespan = makespan();
  out.exact = false;
  return out;
}

SuperitemPair superitem_instance(
    const Instance& original, const IntervalClasses& classes,
    const std::vector<std::vector<std::vector<std::size_t>>>& groups) {
  std::vector<Item> items;
  std::vector<Rat> shifts;
  for (std::size_t c = 0; c < classes.intervals.size(); ++c) {
    for (std::size_t j = 0; j < classes.offsets[c].size(); ++j) {
      if (groups[c][j].empty()) continue;
      std::int64_t h = 0;
      for (std::size_t local : groups[c][j])
        h += original.item(classes.members[c][local]).quantity;
      items.push_back(Item{classes.intervals[c], h});
      shifts.emplace_back(static_cast<long>(classes.offsets[c][j]));
    }
  }
  Instance inst(std::move(items), original.mode());
  ShiftVector sv(inst, std::move(shifts));
  return SuperitemPair{std::move(inst), std::move(sv)};
}

namespace {

// Peak of the expanded vector, through the cheapest applicable engine.
PeakResult evaluate_candidate(const Instance& instance, const ShiftVector& shifts,
                              const IntervalClasses& classes,
                              const std::vector<std::vector<std::vector<std::size_t>>>& groups,
                              const Budgets& budgets) {
  if (instance.cycle_length() <= budgets.scan) return peak_scan(instance, shifts, budgets);
  SuperitemPair pair = superitem_instance(instance, classes, groups);
  return peak_ip(pair.instance, pair.shifts, budgets);
}

}  // namespace

SchemeResult interval_ptas_solve(const Instance& instance, const Rat& eps,
                                 const Budgets& budgets, IntervalPtasReport* report) {
  IntervalClasses classes = group_by_interval(instance, eps);
  GuessSpace gs = guess_space(instance, classes, eps);
  std::size_t k = classes.members.size();

  IntervalPtasReport rep;
  rep.guess_count = count_quantity_guesses(instance, classes, eps);
  for (std::size_t c = 0; c < k; ++c)
    if (count_class_vectors(gs, c, classes.offsets[c].size()) > budgets.guesses)
      throw ResourceError("interval_ptas_solve: per-class guess count exceeds budget");

  // Distinct guesses often balance into the same partition; each class is
  // reduced to its set of distinct surviving partitions before the cross
  // product is evaluated.
  using ClassPartition = std::vector<std::vector<std::size_t>>;
  std::vector<std::vector<ClassPartition>> surviving(k);
  Rat target = Rat(1) + eps;
  for (std::size_t c = 0; c < k; ++c) {
    std::vector<std::int64_t> jobs;
    for (std::size_t i : classes.members[c]) jobs.push_back(instance.item(i).quantity);
    std::vector<ClassPartition> seen;
    long rejected_here = 0;
    for (const auto& m : class_vectors(gs, c, classes.offsets[c].size())) {
      std::vector<Rat> speeds;
      for (long v : m) speeds.push_back(Rat(v) * gs.unit);
      auto bal = balance_partition(jobs, speeds, eps);
      if (!bal || bal->makespan > target) {
        ++rejected_here;
        continue;
      }
      ClassPartition part = bal->groups;
      for (auto& g : part) std::sort(g.begin(), g.end());
      if (std::find(seen.begin(), seen.end(), part) == seen.end()) seen.push_back(part);
    }
    rep.rejected += rejected_here;
    surviving[c] = std::move(seen);
    if (surviving[c].empty())
      throw ResourceError("interval_ptas_solve: no balanced partition for a class");
  }
  BigInt combinations = 1;
  for (std::size_t c = 0; c < k; ++c) combinations *= static_cast<long>(surviving[c].size());
  if (combinations > budgets.guesses)
    throw ResourceError("interval_ptas_solve: partition combinations exceed budget");

  std::vector<std::size_t> idx(k, 0);
  std::optional<SchemeResult> best;
  for (;;) {
    std::vector<std::vector<std::vector<std::size_t>>> groups;
    for (std::size_t c = 0; c < k; ++c) groups.push_back(surviving[c][idx[c]]);
    std::vector<Rat> shifts(instance.size());
    for (std::size_t c = 0; c < k; ++c)
      for (std::size_t j = 0; j < groups[c].size(); ++j)
        for (std::size_t local : groups[c][j])
          shifts[classes.members[c][local]] = Rat(static_cast<long>(classes.offsets[c][j]));
    ShiftVector sv(instance, shifts);
    PeakResult pk = evaluate_candidate(instance, sv, classes, groups, budgets);
    ++rep.evaluated;
    if (!best || pk.value < best->peak.value ||
        (pk.value == best->peak.value && sv.lex_less(ShiftVector(instance, best->shifts))))
      best = SchemeResult{sv.shifts(), pk};

    std::size_t c = k;
    bool advanced = false;
    while (c > 0) {
      --c;
      if (++idx[c] < surviving[c].size()) {
        advanced = true;
        break;
      }
      idx[c] = 0;
    }
    if (!advanced) break;
  }
  if (report) *report = rep;
  return *best;
}

}  // namespace stagger
