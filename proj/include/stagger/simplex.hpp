#pragma once

#include <vector>

#include "stagger/rational.hpp"

namespace stagger {

// Dense linear program over exact rationals, variables implicitly >= 0.
struct LinearProgram {
  enum class Rel { Le, Eq, Ge };
  struct Row {
    std::vector<Rat> coeffs;
    Rel rel;
    Rat rhs;
  };
  int num_vars = 0;
  std::vector<Row> rows;
  std::vector<Rat> objective;  // minimized; empty means pure feasibility
};

struct LpSolution {
  bool feasible = false;
  bool unbounded = false;
  Rat objective;
  std::vector<Rat> x;
};

// Two-phase tableau simplex with Bland's rule (finite termination, no
// floating point anywhere).
LpSolution solve_lp(const LinearProgram& lp);

}  // namespace stagger
