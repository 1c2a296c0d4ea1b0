#include <doctest.h>

#include "stagger/errors.hpp"
#include "stagger/simplex.hpp"

using namespace stagger;

namespace {

LinearProgram::Row row(std::vector<Rat> coeffs, LinearProgram::Rel rel, Rat rhs) {
  return LinearProgram::Row{std::move(coeffs), rel, std::move(rhs)};
}

}  // namespace

TEST_CASE("simplex minimizes a small program") {
  LinearProgram lp;
  lp.num_vars = 2;
  lp.objective = {Rat(1), Rat(1)};
  lp.rows.push_back(row({Rat(1), Rat(1)}, LinearProgram::Rel::Ge, Rat(2)));
  lp.rows.push_back(row({Rat(1), Rat(0)}, LinearProgram::Rel::Le, Rat(3)));
  LpSolution sol = solve_lp(lp);
  REQUIRE(sol.feasible);
  CHECK_FALSE(sol.unbounded);
  CHECK(sol.objective == 2);
  CHECK(sol.x[0] + sol.x[1] == 2);
}

TEST_CASE("simplex detects infeasibility") {
  LinearProgram lp;
  lp.num_vars = 1;
  lp.rows.push_back(row({Rat(1)}, LinearProgram::Rel::Le, Rat(1)));
  lp.rows.push_back(row({Rat(1)}, LinearProgram::Rel::Ge, Rat(2)));
  CHECK_FALSE(solve_lp(lp).feasible);

  LinearProgram eq;
  eq.num_vars = 2;
  eq.rows.push_back(row({Rat(1), Rat(1)}, LinearProgram::Rel::Eq, Rat(1)));
  eq.rows.push_back(row({Rat(1), Rat(1)}, LinearProgram::Rel::Eq, Rat(2)));
  CHECK_FALSE(solve_lp(eq).feasible);
}

TEST_CASE("simplex handles equalities and fractional optima") {
  LinearProgram lp;
  lp.num_vars = 2;
  lp.objective = {Rat(3), Rat(5)};
  lp.rows.push_back(row({Rat(2), Rat(1)}, LinearProgram::Rel::Eq, Rat(1)));
  lp.rows.push_back(row({Rat(0), Rat(1)}, LinearProgram::Rel::Ge, make_rat(1, 3)));
  LpSolution sol = solve_lp(lp);
  REQUIRE(sol.feasible);
  // x = (1/3, 1/3) attains 8/3; pushing y higher only raises the objective
  CHECK(sol.objective == make_rat(8, 3));
  CHECK(Rat(2) * sol.x[0] + sol.x[1] == 1);
}

TEST_CASE("simplex reports unbounded objectives") {
  LinearProgram lp;
  lp.num_vars = 1;
  lp.objective = {Rat(-1)};
  lp.rows.push_back(row({Rat(1)}, LinearProgram::Rel::Ge, Rat(0)));
  LpSolution sol = solve_lp(lp);
  CHECK(sol.feasible);
  CHECK(sol.unbounded);
}

TEST_CASE("simplex pure feasibility with redundant rows") {
  LinearProgram lp;
  lp.num_vars = 3;
  lp.rows.push_back(row({Rat(1), Rat(1), Rat(1)}, LinearProgram::Rel::Eq, Rat(1)));
  lp.rows.push_back(row({Rat(2), Rat(2), Rat(2)}, LinearProgram::Rel::Eq, Rat(2)));
  lp.rows.push_back(row({Rat(1), Rat(0), Rat(0)}, LinearProgram::Rel::Le, make_rat(1, 2)));
  LpSolution sol = solve_lp(lp);
  REQUIRE(sol.feasible);
  CHECK(sol.x[0] + sol.x[1] + sol.x[2] == 1);
  CHECK(sol.x[0] <= make_rat(1, 2));
  for (const Rat& v : sol.x) CHECK(v >= 0);
}

TEST_CASE("simplex validates shapes") {
  LinearProgram lp;
  lp.num_vars = 2;
  lp.rows.push_back(row({Rat(1)}, LinearProgram::Rel::Le, Rat(1)));
  CHECK_THROWS_AS(solve_lp(lp), InputError);
}
