#include "stagger/lp_rounding.hpp"

#include <mpfr.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "stagger/core.hpp"
#include "stagger/errors.hpp"

namespace stagger {

DiscretizationSet build_discretization(const Instance& instance, const Rat& eps) {
  if (eps <= 0 || eps >= 1) throw InputError("build_discretization: eps must be in (0,1)");
  if (instance.mode() != Mode::Discrete)
    throw InputError("build_discretization: Discrete mode required");
  DiscretizationSet disc;
  BigInt j_max = rat_floor(Rat(1) / eps);
  for (const Item& it : instance.items()) {
    std::vector<std::int64_t> offs;
    bool is_large = Rat(static_cast<long>(it.interval)) * eps > 1;
    if (!is_large) {
      for (std::int64_t v = 0; v < it.interval; ++v) offs.push_back(v);
    } else {
      offs.push_back(0);  // T_i folds to 0
      for (BigInt j = 1; j <= j_max; ++j) {
        BigInt v = rat_floor(Rat(j) * eps * static_cast<long>(it.interval));
        offs.push_back(v.get_si() % it.interval);
      }
      std::sort(offs.begin(), offs.end());
      offs.erase(std::unique(offs.begin(), offs.end()), offs.end());
    }
    disc.offsets.push_back(std::move(offs));
    disc.large.push_back(is_large);
  }
  return disc;
}

std::vector<Rat> opt_estimate_grid(const Instance& instance, const Rat& eps) {
  if (eps <= 0) throw InputError("opt_estimate_grid: eps must be positive");
  Rat base = Rat(instance.h_sigma()) / 2;
  Rat ratio = Rat(1) + eps;
  // smallest J with (1+eps)^J >= 2, found exactly
  int j_log = 0;
  Rat pow(1);
  while (pow < 2) {
    pow *= ratio;
    ++j_log;
  }
  std::vector<Rat> grid;
  Rat v = base;
  for (int j = 0; j <= j_log + 1; ++j) {
    grid.push_back(v);
    v *= ratio;
  }
  return grid;
}

Rat heavy_delta(const Instance& instance, const Rat& eps) {
  BigInt two_lambda = instance.cycle_length() * 2;
  mpfr_t x;
  mpfr_init2(x, 64);
  mpfr_set_z(x, two_lambda.get_mpz_t(), MPFR_RNDN);
  mpfr_log(x, x, MPFR_RNDN);
  double ln2l = mpfr_get_d(x, MPFR_RNDN);
  mpfr_clear(x);
  Rat ln_rat(ln2l);  // exact binary value of the double
  return eps * eps * eps / (Rat(36) * ln_rat);
}

HeavySelection select_heavy(const Instance& instance, const DiscretizationSet& disc,
                            const Rat& eps, const Budgets& budgets) {
  HeavySelection sel;
  sel.delta = heavy_delta(instance, eps);
  Rat threshold = sel.delta * Rat(instance.h_sigma());
  for (std::size_t i = 0; i < instance.size(); ++i)
    if (Rat(static_cast<long>(instance.item(i).quantity)) >= threshold)
      sel.heavy.push_back(i);

  auto product = [&](const std::vector<std::size_t>& ids) {
    BigInt p = 1;
    for (std::size_t i : ids) p *= static_cast<long>(disc.offsets[i].size());
    return p;
  };
  if (product(sel.heavy) > budgets.guesses) {
    // keep only the largest-quantity items, ceil(1/eps) of them
    std::vector<std::size_t> order = sel.heavy;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return instance.item(a).quantity > instance.item(b).quantity;
    });
    std::size_t cap = static_cast<std::size_t>(rat_ceil(Rat(1) / eps).get_ui());
    if (order.size() > cap) order.resize(cap);
    std::sort(order.begin(), order.end());
    sel.heavy = order;
    sel.capped = true;
    if (product(sel.heavy) > budgets.guesses)
      throw ResourceError("select_heavy: guess product exceeds budget even after cap");
  }
  return sel;
}

BigInt heavy_guess_count(const DiscretizationSet& disc, const HeavySelection& sel) {
  BigInt p = 1;
  for (std::size_t i : sel.heavy) p *= static_cast<long>(disc.offsets[i].size());
  return p;
}

void enumerate_heavy_guesses(const DiscretizationSet& disc, const HeavySelection& sel,
                             const std::function<void(const std::vector<std::int64_t>&)>& fn) {
  std::size_t k = sel.heavy.size();
  std::vector<std::size_t> idx(k, 0);
  std::vector<std::int64_t> shifts(k);
  for (;;) {
    for (std::size_t j = 0; j < k; ++j) shifts[j] = disc.offsets[sel.heavy[j]][idx[j]];
    fn(shifts);
    std::size_t j = k;
    bool advanced = false;
    while (j > 0) {
      --j;
      if (++idx[j] < disc.offsets[sel.heavy[j]].size()) {
        advanced = true;
        break;
      }
      idx[j] = 0;
    }
    if (!advanced) break;
  }
}

FeasibilityLp build_lp(const Instance& instance, const DiscretizationSet& disc,
                       const GuessState& guess, const Budgets& budgets) {
  BigInt lambda = instance.cycle_length();
  if (lambda > budgets.scan)
    throw ResourceError("build_lp: Lambda " + lambda.get_str() + " exceeds scan budget");
  FeasibilityLp lp;
  lp.instance = &instance;
  lp.guess = guess;
  lp.lambda = lambda;
  lp.blocks.resize(instance.size());
  for (std::size_t i = 0; i < instance.size(); ++i) {
    for (std::int64_t off : disc.offsets[i]) {
      lp.blocks[i].push_back(lp.vars.size());
      lp.vars.emplace_back(i, off);
    }
  }
  return lp;
}

namespace {

// Max of the fractional level sum_j x_j * level_j(t) over integer t in
// [0, Lambda), by incremental sweep over the variables with x_j > 0.
std::pair<Rat, std::int64_t> max_fractional_level(const FeasibilityLp& lp,
                                                  const std::vector<Rat>& x) {
  const Instance& inst = *lp.instance;
  std::int64_t lambda = lp.lambda.get_si();
  struct Term {
    std::int64_t t, r;
    Rat weight, slope;  // x_j H_j and x_j H_j / T_j
  };
  std::vector<Term> terms;
  Rat top(0);
  for (std::size_t j = 0; j < lp.vars.size(); ++j) {
    if (x[j] == 0) continue;
    auto [i, off] = lp.vars[j];
    const Item& it = inst.item(i);
    Term tm;
    tm.t = it.interval;
    tm.r = ((0 - off) % it.interval + it.interval) % it.interval;
    tm.weight = x[j] * static_cast<long>(it.quantity);
    tm.slope = tm.weight / static_cast<long>(it.interval);
    top += tm.weight;
    terms.push_back(tm);
  }
  Rat deficit(0);
  for (const Term& tm : terms) deficit += tm.slope * static_cast<long>(tm.r);
  Rat best(-1);
  std::int64_t arg = 0;
  for (std::int64_t t = 0; t < lambda; ++t) {
    Rat level = top - deficit;
    if (level > best) {
      best = level;
      arg = t;
    }
    for (Term& tm : terms) {
      if (++tm.r == tm.t) {
        tm.r = 0;
        deficit -= tm.slope * static_cast<long>(tm.t - 1);
      } else {
        deficit += tm.slope;
      }
    }
  }
  return {best, arg};
}

}  // namespace

FractionalAssignment solve_feasibility(const FeasibilityLp& lp, const Budgets& budgets) {
  const Instance& inst = *lp.instance;
  LinearProgram active;
  active.num_vars = static_cast<int>(lp.vars.size());
  for (const auto& block : lp.blocks) {
    LinearProgram::Row row{std::vector<Rat>(lp.vars.size(), Rat(0)),
                           LinearProgram::Rel::Eq, Rat(1)};
    for (std::size_t j : block) row.coeffs[j] = 1;
    active.rows.push_back(std::move(row));
  }
  for (std::size_t k = 0; k < lp.guess.heavy.size(); ++k) {
    std::size_t i = lp.guess.heavy[k];
    std::int64_t off = lp.guess.heavy_shifts[k];
    LinearProgram::Row row{std::vector<Rat>(lp.vars.size(), Rat(0)),
                           LinearProgram::Rel::Eq, Rat(1)};
    bool found = false;
    for (std::size_t j : lp.blocks[i]) {
      if (lp.vars[j].second == off) {
        row.coeffs[j] = 1;
        found = true;
      }
    }
    if (!found) throw InputError("solve_feasibility: pinned shift not in discretization");
    active.rows.push_back(std::move(row));
  }

  long cuts = 0;
  for (;;) {
    LpSolution sol = solve_lp(active);
    if (!sol.feasible) return FractionalAssignment{};

    auto [level, t_star] = max_fractional_level(lp, sol.x);
    if (level <= lp.guess.opt_estimate) {
      FractionalAssignment out;
      out.feasible = true;
      out.x = sol.x;
      for (const auto& block : lp.blocks) {  // exact per-block renormalization
        Rat sum(0);
        for (std::size_t j : block) sum += out.x[j];
        for (std::size_t j : block) out.x[j] /= sum;
      }
      return out;
    }
    LinearProgram::Row row{std::vector<Rat>(lp.vars.size(), Rat(0)),
                           LinearProgram::Rel::Le, lp.guess.opt_estimate};
    for (std::size_t j = 0; j < lp.vars.size(); ++j) {
      auto [i, off] = lp.vars[j];
      row.coeffs[j] =
          item_level(inst.item(i), Rat(static_cast<long>(off)), Rat(static_cast<long>(t_star)));
    }
    active.rows.push_back(std::move(row));
    if (++cuts > budgets.scan)
      throw ResourceError("solve_feasibility: row-generation iteration cap");
  }
}

ShiftVector round_solution(const FeasibilityLp& lp, const FractionalAssignment& frac,
                           RngStream& rng) {
  if (!frac.feasible) throw InputError("round_solution: infeasible assignment");
  const Instance& inst = *lp.instance;
  std::vector<Rat> shifts(inst.size());
  for (std::size_t i = 0; i < inst.size(); ++i) {
    Rat u = rng.next_unit();
    Rat cum(0);
    std::size_t pick = lp.blocks[i].back();
    for (std::size_t j : lp.blocks[i]) {
      cum += frac.x[j];
      if (u < cum) {
        pick = j;
        break;
      }
    }
    shifts[i] = Rat(static_cast<long>(lp.vars[pick].second));
  }
  return ShiftVector(inst, std::move(shifts));
}

namespace {

void consider(std::optional<SchemeResult>& best, const Instance& inst,
              const ShiftVector& shifts, const Budgets& budgets) {
  PeakResult pk = peak_scan(inst, shifts, budgets);
  if (!best || pk.value < best->peak.value ||
      (pk.value == best->peak.value &&
       shifts.lex_less(ShiftVector(inst, best->shifts)))) {
    best = SchemeResult{shifts.shifts(), pk};
  }
}

}  // namespace

SchemeResult lp_rounding_solve(const Instance& instance, const Rat& eps,
                               std::uint64_t seed, int repeats, const Budgets& budgets,
                               LpRoundingReport* report) {
  if (repeats < 1) throw InputError("lp_rounding_solve: repeats must be >= 1");
  DiscretizationSet disc = build_discretization(instance, eps);
  std::vector<Rat> grid = opt_estimate_grid(instance, eps);
  HeavySelection sel = select_heavy(instance, disc, eps, budgets);

  LpRoundingReport rep;
  rep.heavy_capped = sel.capped;
  rep.guess_count = heavy_guess_count(disc, sel) * static_cast<long>(grid.size());
  std::optional<SchemeResult> best;
  RngStream rng(seed);

  if (sel.heavy.size() == instance.size()) {
    // Every shift is pinned, so the candidate vector is independent of the
    // peak estimate; each assignment is evaluated once.
    enumerate_heavy_guesses(disc, sel, [&](const std::vector<std::int64_t>& hs) {
      std::vector<Rat> shifts;
      for (std::int64_t v : hs) shifts.emplace_back(static_cast<long>(v));
      consider(best, instance, ShiftVector(instance, std::move(shifts)), budgets);
    });
    rep.lp_feasible = 0;
  } else {
    std::uint64_t guess_index = 0;
    for (const Rat& alpha : grid) {
      enumerate_heavy_guesses(disc, sel, [&](const std::vector<std::int64_t>& hs) {
        GuessState guess{alpha, sel.heavy, hs};
        FeasibilityLp lp = build_lp(instance, disc, guess, budgets);
        FractionalAssignment frac = solve_feasibility(lp, budgets);
        if (!frac.feasible) {
          ++rep.lp_infeasible;
        } else {
          ++rep.lp_feasible;
          for (int r = 0; r < repeats; ++r) {
            RngStream sub = rng.split(guess_index * static_cast<std::uint64_t>(repeats) + r);
            consider(best, instance, round_solution(lp, frac, sub), budgets);
          }
        }
        ++guess_index;
      });
    }
  }
  if (report) *report = rep;
  if (!best) throw ResourceError("lp_rounding_solve: no feasible guess found");
  return *best;
}

OptimumResult restricted_optimum(const Instance& instance, const Rat& eps,
                                 const Budgets& budgets) {
  DiscretizationSet disc = build_discretization(instance, eps);
  BigInt count = 1;
  for (const auto& offs : disc.offsets) count *= static_cast<long>(offs.size());
  if (count > budgets.guesses)
    throw ResourceError("restricted_optimum: " + count.get_str() +
                        " vectors exceed guess budget");

  std::size_t n = instance.size();
  std::vector<std::size_t> idx(n, 0);
  std::optional<OptimumResult> best;
  for (;;) {
    std::vector<Rat> shifts;
    for (std::size_t i = 0; i < n; ++i)
      shifts.emplace_back(static_cast<long>(disc.offsets[i][idx[i]]));
    PeakResult pk = peak_scan(instance, ShiftVector(instance, shifts), budgets);
    if (!best || pk.value < best->value) best = OptimumResult{pk.value, shifts, true};
    std::size_t j = n;
    bool advanced = false;
    while (j > 0) {
      --j;
      if (++idx[j] < disc.offsets[j].size()) {
        advanced = true;
        break;
      }
      idx[j] = 0;
    }
    if (!advanced) break;
  }
  return *best;
}

}  // namespace stagger
