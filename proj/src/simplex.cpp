#include "stagger/simplex.hpp"

#include <cstddef>

#include "stagger/errors.hpp"

namespace stagger {

namespace {

// Tableau layout: columns 0..total_vars-1 are structural + slack/surplus +
// artificial variables, last column is the rhs. One row per constraint plus
// a trailing objective row holding reduced costs and (negated) value.
struct Tableau {
  std::size_t rows, cols;  // constraint rows, total columns incl. rhs
  std::vector<std::vector<Rat>> a;
  std::vector<int> basis;  // basic variable of each constraint row

  Rat& at(std::size_t r, std::size_t c) { return a[r][c]; }

  void pivot(std::size_t pr, std::size_t pc) {
    Rat inv = at(pr, pc);
    for (std::size_t c = 0; c < cols; ++c) a[pr][c] /= inv;
    for (std::size_t r = 0; r <= rows; ++r) {
      if (r == pr) continue;
      Rat f = at(r, pc);
      if (f == 0) continue;
      for (std::size_t c = 0; c < cols; ++c) a[r][c] -= f * a[pr][c];
    }
    basis[pr] = static_cast<int>(pc);
  }

  // Bland's rule: entering column is the lowest index with negative reduced
  // cost, leaving row breaks ratio ties by lowest basic variable index.
  // Returns false when optimal; throws on an unbounded ray.
  bool step() {
    std::size_t enter = cols - 1;
    for (std::size_t c = 0; c + 1 < cols; ++c) {
      if (at(rows, c) < 0) {
        enter = c;
        break;
      }
    }
    if (enter == cols - 1) return false;

    bool found = false;
    std::size_t leave = 0;
    Rat best_ratio;
    for (std::size_t r = 0; r < rows; ++r) {
      if (at(r, enter) <= 0) continue;
      Rat ratio = at(r, cols - 1) / at(r, enter);
      if (!found || ratio < best_ratio ||
          (ratio == best_ratio && basis[r] < basis[leave])) {
        found = true;
        leave = r;
        best_ratio = ratio;
      }
    }
    if (!found) throw InputError("solve_lp: unbounded objective");
    pivot(leave, enter);
    return true;
  }
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp) {
  std::size_t n = static_cast<std::size_t>(lp.num_vars);
  std::size_t m = lp.rows.size();
  for (const auto& row : lp.rows)
    if (row.coeffs.size() != n) throw InputError("solve_lp: row width mismatch");
  if (!lp.objective.empty() && lp.objective.size() != n)
    throw InputError("solve_lp: objective width mismatch");

  std::size_t slacks = 0;
  for (const auto& row : lp.rows)
    if (row.rel != LinearProgram::Rel::Eq) ++slacks;

  std::size_t total = n + slacks + m;  // one artificial per row, pruned below
  Tableau t;
  t.rows = m;
  t.cols = total + 1;
  t.a.assign(m + 1, std::vector<Rat>(t.cols, Rat(0)));
  t.basis.assign(m, -1);

  std::size_t next_slack = n;
  std::size_t next_art = n + slacks;
  std::vector<bool> is_artificial(total, false);
  for (std::size_t r = 0; r < m; ++r) {
    const auto& row = lp.rows[r];
    bool flip = row.rhs < 0;  // keep rhs nonnegative for phase 1
    Rat sign = flip ? Rat(-1) : Rat(1);
    for (std::size_t c = 0; c < n; ++c) t.at(r, c) = sign * row.coeffs[c];
    t.at(r, t.cols - 1) = sign * row.rhs;
    auto rel = row.rel;
    if (flip) {
      if (rel == LinearProgram::Rel::Le)
        rel = LinearProgram::Rel::Ge;
      else if (rel == LinearProgram::Rel::Ge)
        rel = LinearProgram::Rel::Le;
    }
    bool basic_set = false;
    if (row.rel != LinearProgram::Rel::Eq) {
      if (rel == LinearProgram::Rel::Le) {
        t.at(r, next_slack) = 1;
        // slack itself can start basic, no artificial needed
        t.basis[r] = static_cast<int>(next_slack);
        basic_set = true;
      } else {
        t.at(r, next_slack) = -1;
      }
      ++next_slack;
    }
    if (!basic_set) {
      t.at(r, next_art) = 1;
      is_artificial[next_art] = true;
      t.basis[r] = static_cast<int>(next_art);
      ++next_art;
    }
  }

  // Phase 1: minimize the sum of artificials.
  for (std::size_t c = 0; c < total; ++c)
    if (is_artificial[c]) t.at(m, c) = 1;
  for (std::size_t r = 0; r < m; ++r) {
    if (is_artificial[static_cast<std::size_t>(t.basis[r])]) {
      for (std::size_t c = 0; c < t.cols; ++c) t.at(m, c) -= t.a[r][c];
    }
  }
  while (t.step()) {
  }
  LpSolution sol;
  if (t.at(m, t.cols - 1) != 0) {
    sol.feasible = false;
    return sol;
  }

  // Drive any degenerate artificials out of the basis, then drop their
  // columns from consideration by forbidding them as entering variables.
  for (std::size_t r = 0; r < m; ++r) {
    if (!is_artificial[static_cast<std::size_t>(t.basis[r])]) continue;
    bool pivoted = false;
    for (std::size_t c = 0; c < total && !pivoted; ++c) {
      if (!is_artificial[c] && t.at(r, c) != 0) {
        t.pivot(r, c);
        pivoted = true;
      }
    }
    // a fully redundant row keeps its artificial at value zero, harmless
  }
  for (std::size_t c = 0; c < total; ++c) {
    if (is_artificial[c]) {
      for (std::size_t r = 0; r <= m; ++r) t.at(r, c) = 0;
    }
  }

  // Phase 2.
  for (std::size_t c = 0; c < t.cols; ++c) t.at(m, c) = 0;
  if (!lp.objective.empty()) {
    for (std::size_t c = 0; c < n; ++c) t.at(m, c) = lp.objective[c];
    for (std::size_t r = 0; r < m; ++r) {
      Rat cb = t.at(m, static_cast<std::size_t>(t.basis[r]));
      if (cb == 0) continue;
      for (std::size_t c = 0; c < t.cols; ++c) t.at(m, c) -= cb * t.a[r][c];
    }
    try {
      while (t.step()) {
      }
    } catch (const InputError&) {
      sol.feasible = true;
      sol.unbounded = true;
      return sol;
    }
  }

  sol.feasible = true;
  sol.x.assign(n, Rat(0));
  for (std::size_t r = 0; r < m; ++r) {
    if (t.basis[r] >= 0 && static_cast<std::size_t>(t.basis[r]) < n)
      sol.x[static_cast<std::size_t>(t.basis[r])] = t.at(r, t.cols - 1);
  }
  sol.objective = Rat(0);
  for (std::size_t c = 0; c < n; ++c)
    if (!lp.objective.empty()) sol.objective += lp.objective[c] * sol.x[c];
  return sol;
}

}  // namespace stagger
