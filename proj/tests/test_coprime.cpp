#include <doctest.h>

#include <string>

#include "stagger/coprime.hpp"
#include "stagger/errors.hpp"
#include "stagger/generators.hpp"

using namespace stagger;

TEST_CASE("psi_sequence") {
  PsiSequence half = psi_sequence(parse_rat("0.5"), 3);
  REQUIRE(half.values.size() == 4);
  CHECK(half.values[0] == 1);
  CHECK(half.values[1] == 2);
  CHECK(half.values[2] == 16);
  CHECK(half.values[3] == BigInt("4294967296"));
  CHECK_FALSE(half.saturated);

  PsiSequence unit = psi_sequence(Rat(1), 2);
  REQUIRE(unit.values.size() == 3);
  CHECK(unit.values[0] == 1);
  CHECK(unit.values[1] == 1);
  CHECK(unit.values[2] == 4);

  // the tower saturates instead of materializing 4^(2^32)
  PsiSequence sat = psi_sequence(parse_rat("0.5"), 6);
  CHECK(sat.saturated);
  CHECK(sat.values.size() == 4);
  for (std::size_t m = 1; m < sat.values.size(); ++m)
    CHECK(sat.values[m] >= sat.values[m - 1]);

  CHECK_THROWS_AS(psi_sequence(Rat(0), 2), InputError);
  CHECK_THROWS_AS(psi_sequence(Rat(2), 2), InputError);
}

TEST_CASE("validate_coprime names the offending pair") {
  validate_coprime(Instance({{2, 1}, {3, 1}, {5, 1}}, Mode::Continuous));
  Instance bad({{3, 1}, {2, 1}, {4, 1}}, Mode::Continuous);
  try {
    validate_coprime(bad);
    FAIL("expected InputError");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("T_2=2") != std::string::npos);
    CHECK(std::string(e.what()).find("T_3=4") != std::string::npos);
  }
}

TEST_CASE("coprime_decompose") {
  Instance inst({{3, 1}, {5, 1}}, Mode::Continuous);
  PsiDecomposition d = coprime_decompose(inst, parse_rat("0.5"));
  // both intervals land in [Psi_1, Psi_2) = [2, 16), which carries all of
  // H_Sigma, so the first eps-light bin is the empty m = 3
  CHECK(d.m_hat == 3);
  CHECK(d.s_minus == std::vector<std::size_t>{0, 1});
  CHECK(d.s_hat.empty());
  CHECK(d.s_plus.empty());

  // heavy small bin, light top bin
  Instance wide({{2, 5}, {3, 5}, {4294967297, 1}}, Mode::Continuous);
  PsiDecomposition w = coprime_decompose(wide, parse_rat("0.5"));
  CHECK(w.m_hat == 3);
  CHECK(w.s_minus == std::vector<std::size_t>{0, 1});
  CHECK(w.s_hat.empty());
  CHECK(w.s_plus == std::vector<std::size_t>{2});
  // the short part is separated from the long part by the skipped bin
  BigInt lcm = wide.restrict_to(w.s_minus).cycle_length();
  CHECK(lcm < w.psi.values[w.m_hat - 1]);
  CHECK(BigInt(wide.item(2).interval) >= w.psi.values[w.m_hat]);

  CHECK_THROWS_AS(coprime_decompose(inst.with_mode(Mode::Discrete), parse_rat("0.5")),
                  InputError);
  CHECK_THROWS_AS(coprime_decompose(Instance({{2, 1}, {4, 1}}, Mode::Continuous),
                                    parse_rat("0.5")),
                  InputError);
}

TEST_CASE("coprime_lb_witness frozen example") {
  Instance inst({{3, 1}, {5, 1}}, Mode::Continuous);
  ShiftVector sv(inst, {parse_rat("0.2"), parse_rat("0.7")});
  WitnessResult w = coprime_lb_witness(inst, sv);
  CHECK(w.t == 1);
  CHECK(w.level == make_rat(251, 150));
  CHECK(w.level >= (Rat(1) - make_rat(1, 3)) * Rat(inst.h_sigma()));

  // integer shifts align every item exactly
  ShiftVector ints(inst, {Rat(2), Rat(4)});
  WitnessResult full = coprime_lb_witness(inst, ints);
  CHECK(full.level == Rat(inst.h_sigma()));
  CHECK(total_level(inst, ints, Rat(full.t)) == full.level);
}

TEST_CASE("coprime_lb_witness bound holds for random shifts") {
  RngStream rng(37);
  for (int round = 0; round < 100; ++round) {
    Instance inst = gen_coprime(rng, 2 + rng.below(3), 30, 5);
    std::vector<Rat> shifts;
    for (const Item& it : inst.items())
      shifts.push_back(rng.next_unit() * static_cast<long>(it.interval));
    ShiftVector sv(inst, shifts);
    WitnessResult w = coprime_lb_witness(inst, sv);
    CHECK(w.t >= 0);
    CHECK(w.t < inst.cycle_length());
    CHECK(w.level >= (Rat(1) - make_rat(1, inst.t_min())) * Rat(inst.h_sigma()));
    CHECK(total_level(inst, sv, Rat(w.t)) == w.level);
  }
}

TEST_CASE("coprime_solve") {
  Instance solo({{5, 3}}, Mode::Continuous);
  CoprimeReport report;
  SchemeResult res = coprime_solve(solo, parse_rat("0.5"), Budgets{}, &report);
  CHECK(res.peak.value == 3);
  CHECK(report.n_minus == 1);
  CHECK(report.lower_bound == Rat(3) * (Rat(1) - make_rat(1, 5)));

  Instance inst({{2, 1}, {3, 1}, {5, 1}}, Mode::Continuous);
  Rat eps = parse_rat("0.5");
  CoprimeReport rep;
  SchemeResult r = coprime_solve(inst, eps, Budgets{}, &rep);
  CHECK(rep.m_hat == 3);
  CHECK(rep.n_minus == 3);
  CHECK(rep.lower_bound == Rat(inst.h_sigma()) / 2);
  CHECK(r.peak.value >= rep.lower_bound);
  CHECK(r.peak.value <= (Rat(1) + 13 * eps) * rep.lower_bound);
  CHECK(peak_events(inst, ShiftVector(inst, r.shifts)).value == r.peak.value);
  for (std::size_t i = 0; i < inst.size(); ++i) {
    CHECK(r.shifts[i] >= 0);
    CHECK(r.shifts[i] < inst.item(i).interval);
  }

  // deterministic
  SchemeResult r2 = coprime_solve(inst, eps);
  CHECK(r2.shifts == r.shifts);
}

TEST_CASE("coprime_solve approximation against the lower bound") {
  RngStream rng(91);
  Rat eps = parse_rat("0.5");
  for (int round = 0; round < 15; ++round) {
    Instance inst = gen_coprime(rng, 2 + rng.below(3), 15, 4);
    CoprimeReport rep;
    SchemeResult res = coprime_solve(inst, eps, Budgets{}, &rep);
    CHECK(res.peak.value >= rep.lower_bound);
    CHECK(res.peak.value <= (Rat(1) + 13 * eps) * rep.lower_bound);
  }
}
