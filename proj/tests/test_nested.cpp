#include <doctest.h>

#include "stagger/errors.hpp"
#include "stagger/generators.hpp"
#include "stagger/nested.hpp"

using namespace stagger;

TEST_CASE("is_nested") {
  CHECK(is_nested(Instance({{2, 1}, {4, 1}, {8, 1}}, Mode::Discrete)));
  CHECK(is_nested(Instance({{4, 1}, {4, 2}}, Mode::Discrete)));
  CHECK(is_nested(Instance({{5, 1}}, Mode::Discrete)));
  CHECK_FALSE(is_nested(Instance({{2, 1}, {3, 1}}, Mode::Discrete)));
  CHECK_FALSE(is_nested(Instance({{4, 1}, {6, 1}, {12, 1}}, Mode::Discrete)));
}

TEST_CASE("effective_eps") {
  CHECK(effective_eps(parse_rat("0.5")) == make_rat(1, 2));
  CHECK(effective_eps(parse_rat("0.3")) == make_rat(1, 4));
  CHECK(effective_eps(parse_rat("0.9")) == make_rat(1, 2));
  CHECK(effective_eps(make_rat(1, 7)) == make_rat(1, 7));
  CHECK_THROWS_AS(effective_eps(Rat(0)), InputError);
  CHECK_THROWS_AS(effective_eps(Rat(1)), InputError);
}

TEST_CASE("continuous_to_discrete") {
  Instance inst({{2, 3}, {4, 5}}, Mode::Continuous);
  Instance scaled = continuous_to_discrete(inst, parse_rat("0.5"));
  CHECK(scaled.mode() == Mode::Discrete);
  CHECK(scaled.item(0).interval == 4);
  CHECK(scaled.item(1).interval == 8);
  CHECK(scaled.item(0).quantity == 3);

  // scale factor ceil(1/eps) = 1 leaves the intervals unchanged
  Instance unit = continuous_to_discrete(inst, Rat(1));
  CHECK(unit.item(0).interval == 2);
  CHECK(unit.item(1).interval == 4);

  CHECK_THROWS_AS(continuous_to_discrete(scaled, parse_rat("0.5")), InputError);
  Instance huge({{std::int64_t{1} << 62, 1}}, Mode::Continuous);
  CHECK_THROWS_AS(continuous_to_discrete(huge, parse_rat("0.5")), InputError);
}

TEST_CASE("scaled integer vectors map back with identical peak") {
  RngStream rng(29);
  Rat eps = parse_rat("0.5");
  for (int round = 0; round < 25; ++round) {
    Instance inst = gen_nested(rng, 1 + rng.below(4), {1, 2, 4}, 5).with_mode(Mode::Continuous);
    Instance scaled = continuous_to_discrete(inst, eps);
    ShiftVector sv = random_shift_vector(scaled, rng);
    std::vector<Rat> mapped;
    for (const Rat& s : sv.shifts()) mapped.push_back(s / 2);
    PeakResult cont = peak_events(inst, ShiftVector(inst, mapped));
    PeakResult disc = peak_scan(scaled, sv);
    CHECK(cont.value == disc.value);
  }
}

TEST_CASE("well_separated frozen example") {
  Instance inst({{2, 1}, {4, 1}, {32, 1}}, Mode::Discrete);
  WellSeparatedPartition part = well_separated(inst, parse_rat("0.5"));
  CHECK(part.bin_of == std::vector<long>{1, 2, 5});
  CHECK(part.xi == 0);
  REQUIRE(part.blocks.size() == 2);
  CHECK(part.blocks[0] == std::vector<std::size_t>{0});
  CHECK(part.blocks[1] == std::vector<std::size_t>{2});
  CHECK(part.residual == std::vector<std::size_t>{1});

  Instance solo({{6, 4}}, Mode::Discrete);
  WellSeparatedPartition single = well_separated(solo, parse_rat("0.5"));
  CHECK(single.blocks == std::vector<std::vector<std::size_t>>{{0}});
  CHECK(single.residual.empty());
}

TEST_CASE("well_separated invariants on random nested instances") {
  RngStream rng(47);
  for (int round = 0; round < 40; ++round) {
    Instance inst = gen_nested(rng, 1 + rng.below(6), {1, 2, 4, 8, 16, 64}, 6);
    Rat eps = make_rat(1 + static_cast<long>(rng.below(2)), 4);  // 1/4 or 1/2
    Rat e = effective_eps(eps);
    WellSeparatedPartition part = well_separated(inst, eps);

    std::size_t seen = 0;
    BigInt h_residual = 0;
    for (std::size_t i : part.residual)
      h_residual += static_cast<long>(inst.item(i).quantity);
    seen += part.residual.size();

    Rat width_cap(1);
    BigInt b = rat_floor(Rat(1) / e);
    for (BigInt p = 0; p < b; ++p) width_cap *= Rat(b);
    for (std::size_t m = 0; m < part.blocks.size(); ++m) {
      seen += part.blocks[m].size();
      std::int64_t t_min = inst.item(part.blocks[m].front()).interval;
      std::int64_t t_max = t_min;
      for (std::size_t i : part.blocks[m]) {
        t_min = std::min(t_min, inst.item(i).interval);
        t_max = std::max(t_max, inst.item(i).interval);
      }
      // width within (1/eps)^(1/eps)
      CHECK(make_rat(t_max, t_min) <= width_cap);
      // separation against every later block
      for (std::size_t m2 = m + 1; m2 < part.blocks.size(); ++m2)
        for (std::size_t j : part.blocks[m2])
          CHECK(Rat(t_max) <= e * Rat(inst.item(j).interval));
      // eps-shortness: the block's cycle divides out against the next block
      if (m + 1 < part.blocks.size()) {
        BigInt lcm = inst.restrict_to(part.blocks[m]).cycle_length();
        std::int64_t next_min = inst.item(part.blocks[m + 1].front()).interval;
        for (std::size_t j : part.blocks[m + 1])
          next_min = std::min(next_min, inst.item(j).interval);
        CHECK(Rat(lcm) <= e * Rat(next_min));
      }
    }
    CHECK(seen == inst.size());
    CHECK(Rat(h_residual) <= e * Rat(inst.h_sigma()));
  }
}

TEST_CASE("near_additivity_check") {
  Instance inst({{2, 1}, {8, 1}}, Mode::Discrete);
  WellSeparatedPartition part;
  part.blocks = {{0}, {1}};
  AdditivityReport rep = near_additivity_check(inst, part, parse_rat("0.25"));
  CHECK(rep.rhs == 2);
  CHECK(rep.lhs >= average_space_bound(inst));
  CHECK(rep.holds);

  // a single block compares the optimum against itself
  Instance pair({{2, 1}, {4, 1}}, Mode::Discrete);
  WellSeparatedPartition whole = well_separated(pair, parse_rat("0.5"));
  REQUIRE(whole.blocks.size() == 1);
  AdditivityReport same = near_additivity_check(pair, whole, parse_rat("0.5"));
  CHECK(same.lhs == same.rhs);
  CHECK(same.holds);

  RngStream rng(53);
  for (int round = 0; round < 15; ++round) {
    Instance r = gen_nested(rng, 1 + rng.below(4), {1, 2, 4, 8}, 4);
    Rat eps = make_rat(1, 4);
    WellSeparatedPartition p = well_separated(r, eps);
    CHECK(near_additivity_check(r, p, eps).holds);
  }
}

TEST_CASE("nested_solve discrete") {
  Instance chain({{2, 1}, {4, 1}, {8, 1}}, Mode::Discrete);
  Rat eps = make_rat(1, 4);
  NestedReport report;
  SchemeResult res = nested_solve(chain, eps, Budgets{}, &report);
  CHECK(report.eps_effective == make_rat(1, 4));
  OptimumResult opt = brute_optimum(chain);
  CHECK(res.peak.value >= opt.value);
  CHECK(res.peak.value <= (Rat(1) + 8 * eps) * opt.value);
  CHECK(total_level(chain, ShiftVector(chain, res.shifts), res.peak.argmax_time) ==
        res.peak.value);
  CHECK(report.block_sizes.size() == report.block_peaks.size());

  Instance solo({{6, 9}}, Mode::Discrete);
  CHECK(nested_solve(solo, eps).peak.value == 9);

  Instance twin({{2, 1}, {2, 1}}, Mode::Discrete);
  CHECK(nested_solve(twin, make_rat(1, 2)).peak.value == make_rat(3, 2));

  CHECK_THROWS_AS(nested_solve(Instance({{2, 1}, {3, 1}}, Mode::Discrete), eps), InputError);
}

TEST_CASE("nested_solve continuous route") {
  Instance inst({{2, 1}, {4, 1}}, Mode::Continuous);
  Rat eps = make_rat(1, 2);
  NestedReport report;
  SchemeResult res = nested_solve(inst, eps, Budgets{}, &report);
  CHECK(res.peak.value >= Rat(inst.h_sigma()) / 2);
  CHECK(res.peak.value <= Rat(inst.h_sigma()));
  ShiftVector sv(inst, res.shifts);
  CHECK(peak_events(inst, sv).value == res.peak.value);
  for (std::size_t i = 0; i < inst.size(); ++i) {
    CHECK(res.shifts[i] >= 0);
    CHECK(res.shifts[i] < inst.item(i).interval);
  }
}

TEST_CASE("nested_solve approximation bound on a random suite") {
  RngStream rng(71);
  Rat eps = make_rat(1, 4);
  Rat factor = Rat(1) + 8 * eps;
  for (int round = 0; round < 10; ++round) {
    Instance inst = gen_nested(rng, 1 + rng.below(5), {1, 2, 4, 8, 16}, 4);
    SchemeResult res = nested_solve(inst, eps);
    OptimumResult opt = brute_optimum(inst);
    CHECK(res.peak.value >= opt.value);
    CHECK(res.peak.value <= factor * opt.value);
  }
}
